use super::aberth::{aberth_step, eval_complex, AberthState};
use super::bitstream::BitstreamPolynomial;
use super::clusters::{neumaier_clusters, separated_real_roots, RootClusterSet};
use crate::error::{CurveError, Result};
use crate::polycore::{Dyadic, DyadicInterval};

/// Iteration and precision budget of the certified solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Number of precision stages; stage `s` uses `mu = 2^(-start_prec * 2^s)`.
    pub stages: u32,
    pub start_prec: u64,
    /// Aberth sweeps between two cluster checks; `None` means `4 n`.
    pub sweeps_per_check: Option<usize>,
    /// Cluster checks per stage before escalating precision.
    pub checks_per_stage: usize,
    /// Rotates the initial configuration.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig { stages: 4, start_prec: 53, sweeps_per_check: None, checks_per_stage: 6, seed: 0 }
    }
}

/// Outcome of [`certified_solve`]: certified clusters, isolating only on success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Success(RootClusterSet),
    Failure(RootClusterSet),
}

impl SolveOutcome {
    pub fn clusters(&self) -> &RootClusterSet {
        match self {
            SolveOutcome::Success(c) | SolveOutcome::Failure(c) => c,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, SolveOutcome::Success(_))
    }
}

/// Resumable solver state for one bitstream polynomial.
pub struct SolveSession {
    g: BitstreamPolynomial,
    target: usize,
    config: SolverConfig,
    state: Option<AberthState>,
    stage: u32,
    last: Option<RootClusterSet>,
}

impl SolveSession {
    pub fn new(g: BitstreamPolynomial, target: usize, config: SolverConfig) -> SolveSession {
        assert!(target <= g.degree(), "target count exceeds the degree");
        SolveSession { g, target, config, state: None, stage: 0, last: None }
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn last(&self) -> Option<&RootClusterSet> {
        self.last.as_ref()
    }

    fn prec_of(&self, stage: u32) -> u64 {
        self.config.start_prec << stage.min(20)
    }

    /// Runs one precision stage; returns `true` once the cluster count
    /// equals the target.
    fn run_stage(&mut self, want: impl Fn(&RootClusterSet) -> bool) -> Result<bool> {
        let n = self.g.degree();
        let prec = self.prec_of(self.stage);
        let coeffs = self.g.materialize(prec);
        if coeffs[n].contains_zero() {
            return Ok(false);
        }
        let median: Vec<Dyadic> = coeffs.iter().map(DyadicInterval::midpoint).collect();
        let alternate: Vec<Dyadic> = coeffs.iter().map(|c| c.lo().clone()).collect();
        let wp = prec + 16;
        let mut state = match self.state.take() {
            Some(mut s) => {
                s.prec = wp;
                s
            }
            None => AberthState::initial(&median, self.config.seed, wp),
        };
        let sweeps = self.config.sweeps_per_check.unwrap_or(4 * n);
        let mut done = false;
        for _ in 0..self.config.checks_per_stage {
            for _ in 0..sweeps {
                state = aberth_step(&state, &median, Some(&alternate));
            }
            let set = neumaier_clusters(&state.z, &coeffs, prec)?;
            let ok = want(&set);
            self.last = Some(set);
            if ok {
                done = true;
                break;
            }
            // stagnation: every residual is indistinguishable from zero
            if state.z.iter().all(|z| eval_complex(&coeffs, z).contains_zero()) {
                break;
            }
        }
        self.state = Some(state);
        Ok(done)
    }

    fn run_until(&mut self, max_stage: u32, want: impl Fn(&RootClusterSet) -> bool + Copy) -> Result<bool> {
        while self.stage < max_stage {
            if self.run_stage(want)? {
                return Ok(true);
            }
            self.stage += 1;
        }
        Ok(false)
    }

    /// Iterates until the number of clusters equals the target or the stage
    /// budget is exhausted.
    pub fn solve(&mut self) -> Result<SolveOutcome> {
        let n = self.g.degree();
        if n == 0 {
            let set = RootClusterSet { clusters: Vec::new(), isolating: true, prec: 0 };
            return Ok(if self.target == 0 { SolveOutcome::Success(set) } else { SolveOutcome::Failure(set) });
        }
        let target = self.target;
        let ok = self.run_until(self.config.stages, |s| s.len() == target)?;
        let mut set = self.last.clone().ok_or_else(|| {
            CurveError::PrecisionExhausted("leading coefficient never separated from zero".into())
        })?;
        set.isolating = ok;
        self.last = Some(set.clone());
        Ok(if ok { SolveOutcome::Success(set) } else { SolveOutcome::Failure(set) })
    }

    /// Real roots with multiplicities from isolating clusters, iterating
    /// further until conjugate separation holds and, if given, every real
    /// interval is at most `width` wide.
    pub fn extract_real_roots(&mut self, width: Option<&Dyadic>) -> Result<Vec<(DyadicInterval, u32)>> {
        let target = self.target;
        let accept = |s: &RootClusterSet| -> bool {
            s.len() == target
                && separated_real_roots(s).is_some_and(|r| width.is_none_or(|w| r.iter().all(|(i, _)| i.width() <= *w)))
        };
        if self.g.degree() == 0 {
            return Ok(Vec::new());
        }
        if let Some(set) = &self.last {
            if accept(set) {
                return Ok(separated_real_roots(set).unwrap());
            }
        }
        let limit = self.stage + self.config.stages.max(1) + 1;
        if self.stage >= limit {
            return Err(CurveError::CertificationFailed("refinement budget exhausted".into()));
        }
        if self.run_until(limit, accept)? {
            let mut set = self.last.clone().unwrap();
            set.isolating = true;
            let r = separated_real_roots(&set).unwrap();
            self.last = Some(set);
            return Ok(r);
        }
        Err(CurveError::CertificationFailed("conjugate separation not reached within budget".into()))
    }
}

/// Certified clusters of `g`; success iff exactly `target` clusters were found.
pub fn certified_solve(g: &BitstreamPolynomial, target: usize, config: &SolverConfig) -> Result<SolveOutcome> {
    SolveSession::new(g.clone(), target, config.clone()).solve()
}

/// Real roots with multiplicities of `g`, given the number `target` of its
/// distinct complex roots.
pub fn extract_real_roots(g: &BitstreamPolynomial, target: usize, config: &SolverConfig) -> Result<Vec<(DyadicInterval, u32)>> {
    let mut s = SolveSession::new(g.clone(), target, config.clone());
    if !s.solve()?.is_success() {
        return Err(CurveError::CertificationFailed("clusters not isolating".into()));
    }
    s.extract_real_roots(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::UnivariatePolynomial;

    fn stream(c: &[i64]) -> BitstreamPolynomial {
        BitstreamPolynomial::exact(&UnivariatePolynomial::from_i64s(c))
    }

    #[test]
    fn cusp_fiber_one_double_cluster() {
        let out = certified_solve(&stream(&[0, 0, 1]), 1, &SolverConfig::default()).unwrap();
        assert!(out.is_success());
        assert_eq!(out.clusters().clusters[0].multiplicity, 2);
    }

    #[test]
    fn simple_and_complex_roots() {
        let cfg = SolverConfig::default();
        assert!(certified_solve(&stream(&[-1, 0, 1]), 2, &cfg).unwrap().is_success());
        let out = certified_solve(&stream(&[1, 0, 1]), 2, &cfg).unwrap();
        assert!(out.is_success());
        assert!(extract_real_roots(&stream(&[1, 0, 1]), 2, &cfg).unwrap().is_empty());
    }

    #[test]
    fn multiplicities_from_extraction() {
        let cfg = SolverConfig::default();
        let r = extract_real_roots(&stream(&[-1, 0, 1]), 2, &cfg).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].0.contains(&Dyadic::from_i64(-1)) && r[1].0.contains(&Dyadic::one()));
        // y^2 (y - 1)
        let r = extract_real_roots(&stream(&[0, 0, -1, 1]), 2, &cfg).unwrap();
        assert_eq!(r.iter().map(|x| x.1).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn deterministic() {
        let cfg = SolverConfig::default();
        let a = certified_solve(&stream(&[3, -1, 0, 2, 1]), 4, &cfg).unwrap();
        let b = certified_solve(&stream(&[3, -1, 0, 2, 1]), 4, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
