//! Descartes subdivision on interval-coefficient polynomials, isolating the
//! simple real roots once every multiple root is enclosed by a known interval.

use num_bigint::BigInt;

use crate::error::{CurveError, Result};
use crate::numcert::{eval_intervals, BitstreamPolynomial};
use crate::polycore::{Dyadic, DyadicInterval, Rounding};

/// Interval `I_j` known to contain exactly one root of multiplicity `k_j`
/// (and no other root, counted with multiplicity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleRootInterval {
    pub interval: DyadicInterval,
    pub multiplicity: u32,
}

const MAX_BASE_PREC: u64 = 1 << 13;
const SPLITS: [(i64, i64); 5] = [(8, 4), (7, 4), (9, 4), (6, 4), (10, 4)];

/// Largest number of sign variations over all sign choices for coefficients
/// whose interval contains zero.
fn max_variations(coeffs: &[DyadicInterval]) -> usize {
    // best[s]: most variations so far ending with last nonzero sign s (0: none, 1: +, 2: -)
    let mut best: [Option<usize>; 3] = [Some(0), None, None];
    for c in coeffs {
        if c.lo().is_zero() && c.hi().is_zero() {
            continue;
        }
        let can_pos = c.hi().signum() > 0;
        let can_neg = c.lo().signum() < 0;
        let can_zero = c.contains_zero();
        let mut next: [Option<usize>; 3] = if can_zero { best } else { [None, None, None] };
        for (from, val) in best.iter().enumerate() {
            let Some(v) = *val else { continue };
            for (to, allowed) in [(1usize, can_pos), (2usize, can_neg)] {
                if !allowed {
                    continue;
                }
                let add = usize::from(from != 0 && from != to);
                let cand = v + add;
                if next[to].is_none_or(|x| x < cand) {
                    next[to] = Some(cand);
                }
            }
        }
        best = next;
    }
    best.iter().flatten().copied().max().unwrap_or(0)
}

/// Coefficients of `(x + 1)^n g(a + w / (x + 1))` for interval coefficients of `g`.
fn transformed(coeffs: &[DyadicInterval], a: &Dyadic, w: &Dyadic, frac_bits: i64) -> Vec<DyadicInterval> {
    let n = coeffs.len() - 1;
    let mut c = coeffs.to_vec();
    // g(a + x)
    for i in 0..n {
        for j in (i..n).rev() {
            let t = c[j + 1].scale(a);
            c[j] = c[j].add(&t).round_outward_abs(frac_bits);
        }
    }
    // g(a + w x)
    let mut wp = Dyadic::one();
    for ci in c.iter_mut() {
        *ci = ci.scale(&wp);
        wp = &wp * w;
    }
    // reverse, then shift by one
    c.reverse();
    for i in 0..n {
        for j in (i..n).rev() {
            let t = c[j + 1].clone();
            c[j] = c[j].add(&t);
        }
    }
    c
}

fn root_bound_exponent(coeffs: &[DyadicInterval]) -> Option<i64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].mig();
    if lead.is_zero() {
        return None;
    }
    let max = coeffs[..n].iter().map(|c| c.mag()).max().unwrap_or_else(Dyadic::zero);
    let ratio = max.div(&lead, 32, Rounding::Ceil);
    // 2 (1 + max / |g_n|) <= 2^k
    let b = (&ratio + &Dyadic::one()).mul_pow2(1);
    Some(b.msb() + 1)
}

enum Attempt {
    Done(Vec<DyadicInterval>),
    Stagnated,
}

struct Run<'a> {
    g: &'a BitstreamPolynomial,
    multiples: &'a [MultipleRootInterval],
    n: usize,
    k: i64,
    base: u64,
    max_depth: u32,
}

impl Run<'_> {
    fn prec(&self, depth: u32) -> u64 {
        self.base + (self.n as u64 + 1) * (u64::from(depth) + self.k.max(0) as u64 + 2)
    }

    fn certified_nonzero(coeffs: &[DyadicInterval], x: &Dyadic) -> Option<i32> {
        eval_intervals(coeffs, x).sign().filter(|&s| s != 0)
    }

    /// Split point strictly inside `(a, b)` where `g` is certified nonzero.
    fn split_point(&self, a: &Dyadic, b: &Dyadic, coeffs: &[DyadicInterval]) -> Option<Dyadic> {
        let w = b - a;
        for (num, den_log) in SPLITS {
            let mut m = a + &(&w * &Dyadic::new(BigInt::from(num), -den_log));
            if let Some(mi) = self.multiples.iter().find(|mi| mi.interval.contains(&m)) {
                let (lo, hi) = (mi.interval.lo(), mi.interval.hi());
                let lo_in = lo > a && lo < b;
                let hi_in = hi > a && hi < b;
                m = match (lo_in, hi_in) {
                    (true, true) => {
                        if &(&m - lo) <= &(hi - &m) {
                            lo.clone()
                        } else {
                            hi.clone()
                        }
                    }
                    (true, false) => lo.clone(),
                    (false, true) => hi.clone(),
                    (false, false) => continue,
                };
            }
            if Run::certified_nonzero(coeffs, &m).is_some() {
                return Some(m);
            }
        }
        None
    }

    fn run(&self) -> Attempt {
        let bound = Dyadic::pow2(self.k);
        let mut stack = vec![(-&bound, bound.clone(), 0u32)];
        let mut out = Vec::new();
        while let Some((a, b, depth)) = stack.pop() {
            let iv = DyadicInterval::new(a.clone(), b.clone());
            if self.multiples.iter().any(|mi| iv.is_subset_of(&mi.interval)) {
                continue;
            }
            let prec = self.prec(depth);
            let coeffs = self.g.materialize(prec);
            let w = &b - &a;
            let t = transformed(&coeffs, &a, &w, prec as i64 + 8);
            let u = max_variations(&t);
            if u == 0 {
                continue;
            }
            if self
                .multiples
                .iter()
                .any(|mi| mi.interval.is_subset_of(&iv) && u <= mi.multiplicity as usize)
            {
                continue;
            }
            if u == 1 && !self.multiples.iter().any(|mi| mi.interval.intersects(&iv)) {
                let sa = Run::certified_nonzero(&coeffs, &a);
                let sb = Run::certified_nonzero(&coeffs, &b);
                if let (Some(x), Some(y)) = (sa, sb) {
                    if x != y {
                        out.push(iv);
                        continue;
                    }
                }
            }
            if depth >= self.max_depth {
                return Attempt::Stagnated;
            }
            let Some(m) = self.split_point(&a, &b, &coeffs) else {
                return Attempt::Stagnated;
            };
            stack.push((m.clone(), b, depth + 1));
            stack.push((a, m, depth + 1));
        }
        out.sort_by(|x, y| x.lo().cmp(y.lo()));
        Attempt::Done(out)
    }
}

/// Isolating intervals for exactly the simple real roots of the limit
/// polynomial of `g`, ascending and disjoint from every `I_j`.
///
/// Every multiple real root must be covered by one of `multiples`, with its
/// multiplicity, and those intervals must be pairwise disjoint with the root
/// in their interior.
pub fn bitstream_isolate_simple(
    g: &BitstreamPolynomial,
    multiples: &[MultipleRootInterval],
) -> Result<Vec<DyadicInterval>> {
    let n = g.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut base = 64u64;
    let k = loop {
        if let Some(k) = root_bound_exponent(&g.materialize(base)) {
            break k;
        }
        base *= 2;
        if base > MAX_BASE_PREC {
            return Err(CurveError::PrecisionExhausted("leading coefficient not separated from zero".into()));
        }
    };
    let mut base = 64u64;
    while base <= MAX_BASE_PREC {
        let run = Run { g, multiples, n, k, base, max_depth: (base / 2) as u32 };
        if let Attempt::Done(v) = run.run() {
            return Ok(v);
        }
        base *= 2;
    }
    Err(CurveError::PrecisionExhausted(format!("subdivision stagnated for a degree-{n} stream")))
}
