use super::aberth::eval_complex;
use super::complex::{Complex, ComplexInterval};
use crate::error::{CurveError, Result};
use crate::polycore::{Dyadic, DyadicInterval, Rounding};

/// Closed disc with exact center and an upper-bounded radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disc {
    pub center: Complex,
    pub radius: Dyadic,
}

impl Disc {
    /// Closed discs meet.
    pub fn meets(&self, o: &Disc) -> bool {
        let d = self.center.sub(&o.center).norm_sqr();
        let r = &self.radius + &o.radius;
        d <= &r * &r
    }

    pub fn meets_real_axis(&self) -> bool {
        self.center.im.abs() <= self.radius
    }

    pub fn conj(&self) -> Disc {
        Disc { center: self.center.conj(), radius: self.radius.clone() }
    }

    /// Projection onto the real axis, `[re - r, re + r]`.
    pub fn real_shadow(&self) -> DyadicInterval {
        DyadicInterval::new(&self.center.re - &self.radius, &self.center.re + &self.radius)
    }
}

/// Connected union of discs holding exactly `multiplicity` roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCluster {
    pub discs: Vec<Disc>,
    pub multiplicity: u32,
}

impl RootCluster {
    pub fn meets_real_axis(&self) -> bool {
        self.discs.iter().any(Disc::meets_real_axis)
    }

    pub fn meets(&self, o: &RootCluster) -> bool {
        self.discs.iter().any(|a| o.discs.iter().any(|b| a.meets(b)))
    }

    pub fn conj(&self) -> RootCluster {
        RootCluster { discs: self.discs.iter().map(Disc::conj).collect(), multiplicity: self.multiplicity }
    }

    /// Whether `z` lies in the cluster.
    pub fn contains(&self, z: &Complex) -> bool {
        self.discs.iter().any(|d| {
            let dist = d.center.sub(z).norm_sqr();
            dist <= &d.radius * &d.radius
        })
    }

    pub fn real_shadow(&self) -> DyadicInterval {
        self.discs.iter().map(Disc::real_shadow).reduce(|a, b| a.hull(&b)).expect("nonempty cluster")
    }
}

/// Certified clusters; multiplicities sum to the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClusterSet {
    pub clusters: Vec<RootCluster>,
    /// Set when the caller's count certificate says every cluster holds
    /// exactly one distinct root.
    pub isolating: bool,
    /// Absolute precision `-log2(mu)` of the coefficients used.
    pub prec: u64,
}

impl RootClusterSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }
}

/// Inclusion discs for every polynomial with coefficients in `coeffs`,
/// merged into connected components.
pub fn neumaier_clusters(z: &[Complex], coeffs: &[DyadicInterval], prec: u64) -> Result<RootClusterSet> {
    let n = coeffs.len() - 1;
    assert_eq!(z.len(), n, "one approximation per root");
    let lead = &coeffs[n];
    if lead.contains_zero() {
        return Err(CurveError::PrecisionExhausted("leading coefficient interval contains zero".into()));
    }
    let wp = prec + 32;
    let half_n = DyadicInterval::point(Dyadic::from_i64(n as i64).half());
    let mut discs = Vec::with_capacity(n);
    for (i, zi) in z.iter().enumerate() {
        let gz = eval_complex(coeffs, zi).round_outward(wp);
        let mut prod = ComplexInterval::real(DyadicInterval::point(Dyadic::one()));
        for (j, zj) in z.iter().enumerate() {
            if j != i {
                prod = prod.mul_point(&zi.sub(zj)).round_outward(wp);
            }
        }
        // r_i = (n/2) * g(z_i) / (g_n * prod)
        let den = prod.scale_real(lead);
        let r = gz.div(&den, wp).scale_real(&half_n).round_outward(wp);
        let mid = r.midpoint();
        let spread = ComplexInterval {
            re: r.re.sub(&DyadicInterval::point(mid.re.clone())),
            im: r.im.sub(&DyadicInterval::point(mid.im.clone())),
        };
        let radius = (&r.mag_upper(wp) + &spread.mag_upper(wp)).round(wp, Rounding::Ceil);
        discs.push(Disc { center: zi.sub(&mid), radius });
    }
    // union-find over intersecting discs
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut k = i;
        while p[k] != r {
            let nx = p[k];
            p[k] = r;
            k = nx;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if discs[i].meets(&discs[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Disc>)> = Vec::new();
    for (i, d) in discs.into_iter().enumerate() {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, v)) => v.push(d),
            None => groups.push((root, vec![d])),
        }
    }
    let mut clusters: Vec<RootCluster> = groups
        .into_iter()
        .map(|(_, discs)| RootCluster { multiplicity: discs.len() as u32, discs })
        .collect();
    clusters.sort_by(|a, b| {
        let ka = (&a.discs[0].center.re, &a.discs[0].center.im);
        let kb = (&b.discs[0].center.re, &b.discs[0].center.im);
        ka.cmp(&kb)
    });
    Ok(RootClusterSet { clusters, isolating: false, prec })
}

/// Real roots with multiplicities when every cluster either misses the real
/// axis or is disjoint from the conjugates of all others, and the real
/// shadows of the real clusters are pairwise disjoint. `None` otherwise.
pub fn separated_real_roots(set: &RootClusterSet) -> Option<Vec<(DyadicInterval, u32)>> {
    let mut out = Vec::new();
    for (k, c) in set.clusters.iter().enumerate() {
        if !c.meets_real_axis() {
            continue;
        }
        let mirror = c.conj();
        let separated = set.clusters.iter().enumerate().all(|(j, o)| j == k || !mirror.meets(o));
        if !separated {
            return None;
        }
        out.push((c.real_shadow(), c.multiplicity));
    }
    out.sort_by(|a, b| a.0.lo().cmp(b.0.lo()));
    for w in out.windows(2) {
        if w[0].0.intersects(&w[1].0) {
            return None;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: &[i64]) -> Vec<DyadicInterval> {
        v.iter().map(|&x| DyadicInterval::point(Dyadic::from_i64(x))).collect()
    }

    #[test]
    fn exact_roots_give_point_discs() {
        let z = vec![Complex::from_f64(1.0, 0.0), Complex::from_f64(-1.0, 0.0)];
        let set = neumaier_clusters(&z, &exact(&[-1, 0, 1]), 60).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.clusters.iter().all(|c| c.discs[0].radius.is_zero()));
    }

    #[test]
    fn double_root_merges() {
        let z = vec![Complex::from_f64(1.001, 0.0), Complex::from_f64(0.999, 0.0)];
        let set = neumaier_clusters(&z, &exact(&[1, -2, 1]), 60).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.clusters[0].multiplicity, 2);
        assert!(set.clusters[0].contains(&Complex::from_f64(1.0, 0.0)));
    }

    #[test]
    fn sqrt_two_clusters() {
        let z = vec![Complex::from_f64(1.414, 0.0), Complex::from_f64(-1.414, 0.0)];
        let set = neumaier_clusters(&z, &exact(&[-2, 0, 1]), 60).unwrap();
        assert_eq!(set.len(), 2);
        let s = std::f64::consts::SQRT_2;
        assert!(set.clusters.iter().any(|c| c.contains(&Complex::from_f64(s, 0.0))));
        assert!(set.clusters.iter().any(|c| c.contains(&Complex::from_f64(-s, 0.0))));
        let roots = separated_real_roots(&set).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn zero_leading_interval_is_an_error() {
        let mut c = exact(&[1, 1]);
        c[1] = DyadicInterval::new(Dyadic::from_i64(-1), Dyadic::one());
        assert!(neumaier_clusters(&[Complex::zero()], &c, 60).is_err());
    }
}
