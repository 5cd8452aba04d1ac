//! Acceptance run: one PASS/FAIL line per criterion. Each criterion is checked
//! against an oracle written here, independently of the library code paths.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use curvetop::elim::{resultant, resultant_univariate};
use curvetop::lift::{fast_lift, lift_complete, teissier_bound, LiftContext};
use curvetop::numcert::{certified_solve, extract_real_roots, BitstreamPolynomial, Complex, SolverConfig};
use curvetop::pipeline::{analyze, project_factored, split_content, AnalysisConfig, CurveGraph, EdgeTag};
use curvetop::polycore::{BivariatePolynomial, Dyadic, UnivariatePolynomial, Var};
use curvetop::realroots::descartes_isolate;
use curvetop_cli::{parse_polynomial, run, CliConfig, Format, InputSource};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock budget for analyzing the whole corpus.
const CORPUS_BUDGET: Duration = Duration::from_secs(60);
/// Grid cells per axis for the sign-sampling oracle.
const GRID: i64 = 2048;
/// The grid covers `[-GRID_HALF_WIDTH, GRID_HALF_WIDTH]^2`.
const GRID_HALF_WIDTH: i64 = 5;
const RESULTANT_PAIRS: usize = 500;
const BIVARIATE_PAIRS: usize = 60;
const STURM_POLYS: usize = 1000;
const RANDOM_CURVES: usize = 200;
const KNOWN_ROOT_POLYS: usize = 200;
const FORCED_RANDOM_CURVES: usize = 20;

// ---------------------------------------------------------------- corpus

struct Expected {
    name: &'static str,
    components: usize,
    cycle_rank: usize,
    /// Graph degrees of the singular points, ascending.
    singular: Vec<usize>,
    /// Real-fiber multiplicities per event, left to right.
    fibers: Vec<Vec<u32>>,
    /// Unbounded ends, including those of vertical lines.
    rays: usize,
}

fn corpus() -> Vec<(Expected, BivariatePolynomial)> {
    let e = |name, components, cycle_rank, singular: &[usize], fibers: &[&[u32]], rays| Expected {
        name,
        components,
        cycle_rank,
        singular: singular.to_vec(),
        fibers: fibers.iter().map(|f| f.to_vec()).collect(),
        rays,
    };
    let table = vec![
        e("circle", 1, 1, &[], &[&[2], &[2]], 0),
        e("parabola", 1, 0, &[], &[&[2]], 2),
        e("nodal_cubic", 1, 1, &[4], &[&[2], &[2]], 2),
        e("cusp", 1, 0, &[2], &[&[2]], 2),
        e("hyperbola", 2, 0, &[], &[&[]], 4),
        e("stacked_circles", 2, 2, &[], &[&[2, 2], &[2, 2]], 0),
        e("parabola_with_line", 1, 0, &[4], &[&[2]], 4),
    ];
    table
        .into_iter()
        .map(|ex| {
            let path = format!("{}/tests/corpus/{}.poly", env!("CARGO_MANIFEST_DIR"), ex.name);
            let text = std::fs::read_to_string(&path).expect("corpus file");
            let f = parse_polynomial(&text).expect("corpus parses");
            (ex, f)
        })
        .collect()
}

fn random_curve(rng: &mut ChaCha8Rng, d: u32, bits: u32) -> BivariatePolynomial {
    let b = 1i64 << bits;
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            terms.push(((i, j), BigInt::from(rng.gen_range(-b..=b))));
        }
    }
    BivariatePolynomial::from_terms(terms)
}

// ---------------------------------------------------------------- grid oracle

/// Exact signs of `f` on the grid, via `f(i h, j h) * (1/h)^d` in integers.
fn grid_signs(f: &BivariatePolynomial) -> Vec<i8> {
    let d = f.total_degree().unwrap_or(0) as u32;
    // h = 2 * GRID_HALF_WIDTH / GRID; scale coordinates by GRID / 2
    let scale = GRID / 2;
    let terms: Vec<(u32, u32, i128)> = f
        .terms()
        .iter()
        .map(|(&(a, b), c)| {
            let c: i128 = c.try_into().expect("small corpus coefficients");
            (a, b, c * (scale as i128).pow(d - a - b))
        })
        .collect();
    let n = GRID + 1;
    let mut out = Vec::with_capacity((n * n) as usize);
    for j in 0..n {
        let y = ((j - GRID / 2) * GRID_HALF_WIDTH) as i128;
        for i in 0..n {
            let x = ((i - GRID / 2) * GRID_HALF_WIDTH) as i128;
            let v: i128 = terms.iter().map(|&(a, b, c)| c * x.pow(a) * y.pow(b)).sum();
            out.push(v.signum() as i8);
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Components of the curve inside the window (cells meeting the zero set,
/// 4-connected) and bounded complementary regions (same-sign grid points,
/// 4-connected, not touching the border).
fn grid_topology(f: &BivariatePolynomial) -> (usize, usize) {
    let s = grid_signs(f);
    let n = (GRID + 1) as usize;
    let at = |i: usize, j: usize| s[j * n + i];
    let c = n - 1;
    let cell = |i: usize, j: usize| {
        let v = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
        v.contains(&0) || (v.contains(&1) && v.contains(&-1))
    };
    let mut uf = UnionFind::new(c * c);
    let mut curve = vec![false; c * c];
    for j in 0..c {
        for i in 0..c {
            curve[j * c + i] = cell(i, j);
        }
    }
    for j in 0..c {
        for i in 0..c {
            if !curve[j * c + i] {
                continue;
            }
            if i + 1 < c && curve[j * c + i + 1] {
                uf.union(j * c + i, j * c + i + 1);
            }
            if j + 1 < c && curve[(j + 1) * c + i] {
                uf.union(j * c + i, (j + 1) * c + i);
            }
        }
    }
    let comps: BTreeSet<usize> = (0..c * c).filter(|&k| curve[k]).map(|k| uf.find(k)).collect();

    let mut uf = UnionFind::new(n * n);
    for j in 0..n {
        for i in 0..n {
            let v = at(i, j);
            if v == 0 {
                continue;
            }
            if i + 1 < n && at(i + 1, j) == v {
                uf.union(j * n + i, j * n + i + 1);
            }
            if j + 1 < n && at(i, j + 1) == v {
                uf.union(j * n + i, (j + 1) * n + i);
            }
        }
    }
    let mut border = BTreeSet::new();
    for k in 0..n {
        for (i, j) in [(k, 0), (k, n - 1), (0, k), (n - 1, k)] {
            if at(i, j) != 0 {
                border.insert(uf.find(j * n + i));
            }
        }
    }
    let regions: BTreeSet<usize> = (0..n * n).filter(|&k| s[k] != 0).map(|k| uf.find(k)).collect();
    (comps.len(), regions.difference(&border).count())
}

fn ray_count(g: &CurveGraph) -> usize {
    g.edges.iter().filter(|e| matches!(e.tag, EdgeTag::Ray(_))).count()
}

fn criterion_1() -> (bool, String) {
    let mut failures = Vec::new();
    let mut elapsed = Duration::ZERO;
    for (ex, f) in corpus() {
        let t = Instant::now();
        let (g, _) = match analyze(&f, &AnalysisConfig::default()) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{}: {e}", ex.name));
                continue;
            }
        };
        elapsed += t.elapsed();
        let (oc, ob) = grid_topology(&f);
        let mut singular: Vec<usize> = g.singular_degrees().into_values().collect();
        singular.sort_unstable();
        let fibers: Vec<Vec<u32>> = g.events.iter().map(|e| e.fiber.points.iter().map(|p| p.multiplicity).collect()).collect();
        let checks = [
            ("components", g.component_count() == ex.components && oc == ex.components),
            ("cycle rank", g.cycle_rank() == ex.cycle_rank && ob == ex.cycle_rank),
            ("singular degrees", singular == ex.singular),
            ("fiber multiplicities", fibers == ex.fibers),
            ("rays", ray_count(&g) == ex.rays),
            ("on-curve residual", g.check_on_curve(&f, 64)),
        ];
        for (what, ok) in checks {
            if !ok {
                failures.push(format!(
                    "{}: {what} (graph C={} B1={}, grid C={oc} B1={ob}, singular {singular:?}, fibers {fibers:?})",
                    ex.name,
                    g.component_count(),
                    g.cycle_rank()
                ));
            }
        }
    }
    if elapsed > CORPUS_BUDGET {
        failures.push(format!("corpus took {elapsed:?}"));
    }
    (failures.is_empty(), format!("7 curves in {elapsed:.2?}, grid {GRID}^2; {}", summary(&failures)))
}

fn summary(failures: &[String]) -> String {
    if failures.is_empty() {
        "no mismatches".into()
    } else {
        format!("{} mismatches: {}", failures.len(), failures.iter().take(5).cloned().collect::<Vec<_>>().join("; "))
    }
}

// ---------------------------------------------------------------- resultants

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Determinant by fraction-exact Gaussian elimination.
fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let v = &factor * &m[col][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

/// Sylvester determinant for coefficient lists (ascending) of formal
/// degrees `p.len() - 1` and `q.len() - 1`.
fn sylvester(p: &[BigInt], q: &[BigInt]) -> BigRational {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = rat(c);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = rat(c);
        }
        rows.push(row);
    }
    determinant(rows)
}

fn random_coeffs(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    while c[deg].is_zero() {
        c[deg] = BigInt::from(rng.gen_range(-bound..=bound));
    }
    c
}

fn criterion_2() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let bound = 1i64 << 16;
    let mut failures = Vec::new();
    for k in 0..RESULTANT_PAIRS {
        let (dp, dq) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let mut p = random_coeffs(&mut rng, dp, bound);
        let q = random_coeffs(&mut rng, dq, bound);
        if k % 10 == 0 {
            // force a common root at y = 1
            let s: BigInt = p.iter().sum();
            p[0] -= s;
        }
        let got = resultant_univariate(&UnivariatePolynomial::new(p.clone()), &UnivariatePolynomial::new(q.clone()));
        match got {
            Ok(r) if rat(&r) == sylvester(&p, &q) => {}
            other => failures.push(format!("pair {k}: {other:?}")),
        }
    }
    for k in 0..BIVARIATE_PAIRS {
        let (d1, d2) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
        let f = random_curve(&mut rng, d1, 16);
        let g = random_curve(&mut rng, d2, 16);
        let r = match resultant(&f, &g, Var::Y) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("bivariate {k}: {e}"));
                continue;
            }
        };
        let (nf, ng) = (f.degree_y().unwrap_or(0), g.degree_y().unwrap_or(0));
        for x0 in [-3i64, -1, 0, 2, 5] {
            let xq = BigRational::from_integer(BigInt::from(x0));
            let spec = |h: &BivariatePolynomial, n: usize| -> Vec<BigInt> {
                (0..=n)
                    .map(|j| h.y_coeffs().get(j).map_or(BigInt::zero(), |c| c.eval_rational(&xq).to_integer()))
                    .collect()
            };
            if r.eval_rational(&xq) != sylvester(&spec(&f, nf), &spec(&g, ng)) {
                failures.push(format!("bivariate {k} at x = {x0}"));
            }
        }
    }
    (
        failures.is_empty(),
        format!("{RESULTANT_PAIRS} univariate pairs, {BIVARIATE_PAIRS} bivariate pairs at 5 points each; {}", summary(&failures)),
    )
}

// ---------------------------------------------------------------- Sturm

type QPoly = Vec<BigRational>;

fn qtrim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn qrem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            let v = &factor * c;
            r[shift + i] -= v;
        }
        r = qtrim(r);
    }
    r
}

fn qeval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sturm_chain(p: &[BigInt]) -> Vec<QPoly> {
    let p0: QPoly = qtrim(p.iter().map(rat).collect());
    let p1: QPoly = qtrim((1..p0.len()).map(|i| &p0[i] * BigRational::from_integer(BigInt::from(i))).collect());
    let mut chain = vec![p0, p1];
    while chain.last().is_some_and(|p| p.len() > 1) {
        let n = chain.len();
        let r: QPoly = qrem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let s: Vec<i32> = signs.filter(|&s| s != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn var_at(chain: &[QPoly], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| sign(&qeval(p, x))))
}

fn var_at_infinity(chain: &[QPoly], positive: bool) -> usize {
    variations(chain.iter().map(|p| {
        let s = sign(p.last().unwrap());
        if positive || (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Square-free iff the last Sturm remainder is a constant.
fn sturm_squarefree(chain: &[QPoly]) -> bool {
    chain.last().is_some_and(|p| p.len() == 1)
}

fn criterion_3() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let mut tested = 0;
    let mut roots_seen = 0;
    while tested < STURM_POLYS {
        let deg = rng.gen_range(1..=12usize);
        let coeffs: Vec<BigInt> = if tested % 2 == 0 {
            random_coeffs(&mut rng, deg, 1 << 16)
        } else {
            // product of distinct rational linear factors and a random tail
            let lin = rng.gen_range(1..=deg);
            let mut roots = BTreeSet::new();
            while roots.len() < lin {
                roots.insert((rng.gen_range(-40i64..=40), rng.gen_range(1i64..=4)));
            }
            let mut p = UnivariatePolynomial::from_i64s(&[1]);
            for (a, b) in roots {
                p = p.mul(&UnivariatePolynomial::from_i64s(&[-a, b]));
            }
            if deg > lin {
                p = p.mul(&UnivariatePolynomial::new(random_coeffs(&mut rng, deg - lin, 50)));
            }
            p.coeffs().to_vec()
        };
        let chain = sturm_chain(&coeffs);
        if !sturm_squarefree(&chain) {
            continue;
        }
        tested += 1;
        let expected = var_at_infinity(&chain, false) - var_at_infinity(&chain, true);
        let iso = match descartes_isolate(&UnivariatePolynomial::new(coeffs.clone())) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("poly {tested}: {e}"));
                continue;
            }
        };
        roots_seen += iso.len();
        if iso.len() != expected {
            failures.push(format!("poly {tested}: {} roots isolated, Sturm counts {expected}", iso.len()));
            continue;
        }
        let p0 = &chain[0];
        for (k, a) in iso.iter().enumerate() {
            let (lo, hi) = (a.lo().to_rational(), a.hi().to_rational());
            let ok = if lo == hi {
                qeval(p0, &lo).is_zero()
            } else {
                !qeval(p0, &lo).is_zero() && !qeval(p0, &hi).is_zero() && var_at(&chain, &lo) - var_at(&chain, &hi) == 1
            };
            let ordered = k == 0 || iso[k - 1].hi() < a.lo();
            if !ok || !ordered {
                failures.push(format!("poly {tested}: interval {k} [{}, {}]", a.lo(), a.hi()));
            }
        }
    }
    (failures.is_empty(), format!("{STURM_POLYS} square-free polynomials, {roots_seen} roots; {}", summary(&failures)))
}

// ---------------------------------------------------------------- Teissier and FastLift/Lift

struct LiftStats {
    events: usize,
    sharp: usize,
    bound_violations: Vec<String>,
    fastlift_ok: usize,
    compared: usize,
    disagreements: Vec<String>,
    skipped: usize,
}

fn lift_checks(name: &str, f: &BivariatePolynomial, stats: &mut LiftStats) {
    let ctx = match LiftContext::new(f) {
        Ok(c) => c,
        Err(_) => {
            stats.skipped += 1;
            return;
        }
    };
    let proj = project_factored(ctx.resultant_factorization()).expect("projection");
    for (k, ev) in proj.events.iter().enumerate() {
        stats.events += 1;
        let bound = teissier_bound(&ctx, &ev.x);
        let distinct = ctx.distinct_complex_roots(&ev.x).expect("fiber gcd");
        let full = match lift_complete(&ctx, &ev.x, None) {
            Ok(fb) => fb,
            Err(e) => {
                stats.disagreements.push(format!("{name} event {k}: lift failed: {e}"));
                continue;
            }
        };
        if bound.m_star < distinct || bound.m_star < full.len() {
            stats.bound_violations.push(format!(
                "{name} event {k}: m* = {} < m = {distinct} (real {})",
                bound.m_star,
                full.len()
            ));
        }
        if bound.m_star == distinct {
            stats.sharp += 1;
        }
        stats.compared += 1;
        match fast_lift(&ctx, &ev.x, &bound, &SolverConfig::default(), None) {
            Ok(Some(fl)) => {
                stats.fastlift_ok += 1;
                if !fl.agrees_with(&full) {
                    stats.disagreements.push(format!("{name} event {k}"));
                }
            }
            Ok(None) => {}
            Err(e) => stats.disagreements.push(format!("{name} event {k}: fastlift error {e}")),
        }
    }
}

fn criteria_4_and_5() -> [(bool, String); 2] {
    let mut stats = LiftStats {
        events: 0,
        sharp: 0,
        bound_violations: Vec::new(),
        fastlift_ok: 0,
        compared: 0,
        disagreements: Vec::new(),
        skipped: 0,
    };
    for (ex, f) in corpus() {
        let (_, fp) = split_content(&f, false).expect("corpus is square-free");
        lift_checks(ex.name, &fp, &mut stats);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..RANDOM_CURVES {
        let f = random_curve(&mut rng, 2 + (k % 5) as u32, 10);
        lift_checks(&format!("random {k}"), &f, &mut stats);
    }
    let rate = if stats.events == 0 { 0.0 } else { 100.0 * stats.sharp as f64 / stats.events as f64 };
    [
        (
            stats.bound_violations.is_empty() && stats.skipped == 0,
            format!(
                "{RANDOM_CURVES} random curves plus corpus, {} events, bound sharp at {:.1}%, {} skipped; {}",
                stats.events,
                rate,
                stats.skipped,
                summary(&stats.bound_violations)
            ),
        ),
        (
            stats.disagreements.is_empty() && stats.fastlift_ok > 0,
            format!(
                "{} fibers compared, fastlift succeeded on {}; {}",
                stats.compared,
                stats.fastlift_ok,
                summary(&stats.disagreements)
            ),
        ),
    ]
}

// ---------------------------------------------------------------- Neumaier and extraction

struct KnownPoly {
    poly: UnivariatePolynomial,
    /// Exact roots with multiplicities; complex ones appear with their conjugates.
    roots: Vec<(Complex, u32)>,
    real: Vec<(Dyadic, u32)>,
}

fn known_roots(rng: &mut ChaCha8Rng, index: usize) -> KnownPoly {
    let mut poly = UnivariatePolynomial::from_i64s(&[1]);
    let mut roots = Vec::new();
    let mut real = Vec::new();
    let mut used_real = BTreeSet::new();
    let mut used_complex = BTreeSet::new();
    let mut deg = 0usize;
    let k1 = index % 5;
    if k1 > 0 {
        poly = poly.mul(&UnivariatePolynomial::from_i64s(&[-1, 1]).pow(k1 as u32));
        roots.push((Complex::real(Dyadic::one()), k1 as u32));
        real.push((Dyadic::one(), k1 as u32));
        used_real.insert((1i64 << 2, 2u32));
        deg += k1;
    }
    let target = rng.gen_range(deg.max(1)..=12);
    while deg < target {
        let m = if rng.gen_bool(0.25) { 2 } else { 1 };
        if rng.gen_bool(0.5) {
            if deg + m > target {
                continue;
            }
            // a / 2^e, keyed on the value scaled by 4
            let e = rng.gen_range(0..=2u32);
            let a = rng.gen_range(-12i64..=12);
            if !used_real.insert((a << (2 - e), 2)) {
                continue;
            }
            let r = Dyadic::new(BigInt::from(a), -(e as i64));
            poly = poly.mul(&UnivariatePolynomial::from_i64s(&[-a, 1 << e]).pow(m as u32));
            roots.push((Complex::real(r.clone()), m as u32));
            real.push((r, m as u32));
            deg += m;
        } else {
            if deg + 2 * m > target {
                if deg + 1 > target {
                    break;
                }
                continue;
            }
            let (a, b) = (rng.gen_range(-6i64..=6), rng.gen_range(1i64..=6));
            if !used_complex.insert((a, b)) {
                continue;
            }
            poly = poly.mul(&UnivariatePolynomial::from_i64s(&[a * a + b * b, -2 * a, 1]).pow(m as u32));
            let (re, im) = (Dyadic::from_i64(a), Dyadic::from_i64(b));
            roots.push((Complex::new(re.clone(), im.clone()), m as u32));
            roots.push((Complex::new(re, -&im), m as u32));
            deg += 2 * m;
        }
    }
    real.sort_by(|a, b| a.0.cmp(&b.0));
    KnownPoly { poly, roots, real }
}

fn criteria_6_and_7() -> [(bool, String); 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = Vec::new();
    let mut mismatches = Vec::new();
    let mut solves = 0;
    let mut max_deg = 0;
    let mut with_power = 0;
    for k in 0..KNOWN_ROOT_POLYS {
        let kp = known_roots(&mut rng, k);
        let n = kp.poly.degree().unwrap_or(0);
        max_deg = max_deg.max(n);
        if kp.roots.iter().any(|(_, m)| *m >= 2) {
            with_power += 1;
        }
        let g = BitstreamPolynomial::exact(&kp.poly);
        let distinct = kp.roots.len();
        for stages in 1..=4u32 {
            let cfg = SolverConfig { stages, ..SolverConfig::default() };
            solves += 1;
            let out = match certified_solve(&g, distinct, &cfg) {
                Ok(o) => o,
                Err(e) => {
                    violations.push(format!("poly {k} stages {stages}: {e}"));
                    continue;
                }
            };
            let set = out.clusters();
            if set.total_multiplicity() as usize != n {
                violations.push(format!("poly {k} stages {stages}: multiplicities sum to {}", set.total_multiplicity()));
            }
            for (z, _) in &kp.roots {
                if !set.clusters.iter().any(|c| c.contains(z)) {
                    violations.push(format!("poly {k} stages {stages}: root {:?} outside every cluster", z.to_f64()));
                }
            }
            for c in &set.clusters {
                let inside: u32 = kp.roots.iter().filter(|(z, _)| c.contains(z)).map(|(_, m)| m).sum();
                if inside != c.multiplicity {
                    violations.push(format!("poly {k} stages {stages}: cluster of multiplicity {} holds {inside}", c.multiplicity));
                }
            }
        }
        match extract_real_roots(&g, distinct, &SolverConfig::default()) {
            Ok(found) => {
                let ok = found.len() == kp.real.len()
                    && found.iter().zip(&kp.real).all(|((iv, m), (r, mr))| iv.contains(r) && m == mr)
                    && found.iter().all(|(iv, _)| kp.real.iter().filter(|(r, _)| iv.contains(r)).count() == 1);
                if !ok {
                    let got: Vec<(f64, u32)> = found.iter().map(|(iv, m)| (iv.midpoint().to_f64(), *m)).collect();
                    let want: Vec<(f64, u32)> = kp.real.iter().map(|(r, m)| (r.to_f64(), *m)).collect();
                    mismatches.push(format!("poly {k}: got {got:?}, want {want:?}"));
                }
            }
            Err(e) => mismatches.push(format!("poly {k}: {e}")),
        }
    }
    [
        (
            violations.is_empty(),
            format!(
                "{KNOWN_ROOT_POLYS} polynomials (max degree {max_deg}, {with_power} with repeated roots), {solves} solves; {}",
                summary(&violations)
            ),
        ),
        (mismatches.is_empty(), format!("{KNOWN_ROOT_POLYS} polynomials; {}", summary(&mismatches))),
    ]
}

// ---------------------------------------------------------------- forced path and determinism

fn criterion_8() -> (bool, String) {
    let mut failures = Vec::new();
    let mut curves: Vec<(String, BivariatePolynomial)> = corpus().into_iter().map(|(e, f)| (e.name.to_string(), f)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..FORCED_RANDOM_CURVES {
        curves.push((format!("random {k}"), random_curve(&mut rng, 2 + (k % 4) as u32, 10)));
    }
    for (name, f) in &curves {
        let a = analyze(f, &AnalysisConfig::default());
        let b = analyze(f, &AnalysisConfig { force_lift: true, ..AnalysisConfig::default() });
        match (a, b) {
            (Ok((a, _)), Ok((b, rb))) => {
                if !a.same_topology(&b) {
                    failures.push(name.clone());
                }
                if rb.fastlift_fibers != 0 {
                    failures.push(format!("{name}: forced run used the numerical filter"));
                }
            }
            (a, b) => failures.push(format!("{name}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    (failures.is_empty(), format!("corpus plus {FORCED_RANDOM_CURVES} random curves; {}", summary(&failures)))
}

fn criterion_9() -> (bool, String) {
    let mut failures = Vec::new();
    for (ex, f) in corpus() {
        let config = CliConfig {
            input: InputSource::Text(f.to_text()),
            format: Format::Json,
            precision: 30,
            fastlift_budget: 4,
            force_lift: false,
            make_squarefree: false,
            bbox: None,
            seed: 0,
            report: false,
        };
        match (run(&config), run(&config)) {
            (Ok(a), Ok(b)) if a.text == b.text => {}
            _ => failures.push(ex.name.to_string()),
        }
    }
    (failures.is_empty(), format!("7 curves, two runs each; {}", summary(&failures)))
}

fn main() -> ExitCode {
    let names = [
        "known-topology corpus",
        "resultant vs Sylvester determinant",
        "Descartes vs Sturm",
        "Teissier bound",
        "FastLift/Lift agreement",
        "Neumaier soundness",
        "real multiplicities from extraction",
        "forced-path equivalence",
        "deterministic JSON",
    ];
    let mut results = Vec::with_capacity(9);
    let mut report = |r: (bool, String)| {
        let i = results.len();
        println!("criterion {} ({}): {} ({})", i + 1, names[i], if r.0 { "PASS" } else { "FAIL" }, r.1);
        results.push(r.0);
    };
    report(criterion_1());
    report(criterion_2());
    report(criterion_3());
    let [c4, c5] = criteria_4_and_5();
    report(c4);
    report(c5);
    let [c6, c7] = criteria_6_and_7();
    report(c6);
    report(c7);
    report(criterion_8());
    report(criterion_9());
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
