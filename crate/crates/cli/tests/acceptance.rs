//! End-to-end acceptance run. Prints one PASS/FAIL line per check and exits
//! non-zero if any check fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use haar_core::arith::{to_f64, PolyD};
use haar_core::gaussian::{gaussian_f_at_zero, gaussian_f_by_recursion, gaussian_f_closed_form, gaussian_f_quadrature};
use haar_core::monomial::{strip_zero_columns, vanishes_trivially};
use haar_core::{
    integrate, one_vector_unitary, BigRational, ExponentMatrix, ExponentSpec, Group, Integrator, MemoCache, MemoKey,
    OrthogonalSpec, RationalFunction, SymplecticSpec, UnitarySpec,
};
use haar_mc::{estimate_monomials, SamplerConfig};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const Z_OK: f64 = 4.0;
const Z_MAX: f64 = 6.0;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn rf(s: &str) -> RationalFunction {
    s.parse().unwrap()
}

fn mat(rows: &[&[u32]]) -> ExponentMatrix {
    ExponentMatrix::from_rows(rows).unwrap()
}

fn o(rows: &[&[u32]]) -> ExponentSpec {
    OrthogonalSpec::new(mat(rows)).into()
}

fn u(m: &[&[u32]], n: &[&[u32]]) -> ExponentSpec {
    UnitarySpec::new(mat(m), mat(n)).into()
}

fn sp(m: &[&[u32]], mp: &[&[u32]], n: &[&[u32]], np: &[&[u32]]) -> ExponentSpec {
    SymplecticSpec::new(mat(m), mat(mp), mat(n), mat(np)).unwrap().into()
}

fn block_count(group: Group) -> usize {
    match group {
        Group::Orthogonal => 1,
        Group::Unitary => 2,
        Group::Symplectic => 4,
    }
}

fn make(group: Group, blocks: Vec<ExponentMatrix>) -> ExponentSpec {
    let mut b = blocks.into_iter();
    let mut next = || b.next().unwrap();
    match group {
        Group::Orthogonal => OrthogonalSpec::new(next()).into(),
        Group::Unitary => UnitarySpec::new(next(), next()).into(),
        Group::Symplectic => SymplecticSpec::new(next(), next(), next(), next()).unwrap().into(),
    }
}

/// Largest `|z|` over real and imaginary parts, treating exact agreement
/// as zero.
fn z_score(mean: Complex64, se: f64, se_imag: f64, exact: f64) -> f64 {
    let z = |diff: f64, se: f64| if diff == 0.0 { 0.0 } else { (diff / se).abs() };
    z(mean.re - exact, se).max(z(mean.im, se_imag))
}

/// Monte Carlo z-scores for `specs` at `d` against their symbolic values.
fn mc_scores(group: Group, specs: &[ExponentSpec], d: usize, samples: u64, seed: u64) -> Vec<f64> {
    let est = estimate_monomials(specs, &SamplerConfig::new(group, d, seed, samples)).unwrap();
    specs
        .iter()
        .zip(est)
        .map(|(s, e)| {
            let exact = to_f64(&integrate(s).value.evaluate_at(d as i64).unwrap());
            z_score(e.mean, e.std_error, e.std_error_imag, exact)
        })
        .collect()
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(0.0, f64::max)
}

fn one_vector_orthogonal_suite() -> Check {
    let half = BigRational::new(1.into(), 2.into());
    let oracle = |m: &[u32]| {
        let mut num = BigRational::from_integer(1.into());
        for &mi in m {
            for k in 0..mi / 2 {
                num *= &half + BigRational::from_integer(k.into());
            }
        }
        let mut den = PolyD::one();
        for k in 0..m.iter().sum::<u32>() / 2 {
            den = &den * &PolyD::linear(half.clone(), BigRational::from_integer(k.into()));
        }
        RationalFunction::new(PolyD::constant(num), den).unwrap()
    };
    let integrator = Integrator::new();
    let start = Instant::now();
    let (mut total, mut bad) = (0, 0);
    for len in 1..=3u32 {
        for code in 0..5u32.pow(len) {
            let v: Vec<u32> = (0..len).map(|i| 2 * (code / 5u32.pow(i) % 5)).collect();
            if v.iter().sum::<u32>() > 8 {
                continue;
            }
            total += 1;
            let got = integrator.integrate(&OrthogonalSpec::new(ExponentMatrix::column_vector(&v)).into()).value;
            if got != oracle(&v) {
                bad += 1;
            }
        }
    }
    let t = start.elapsed();
    check(bad == 0 && t < Duration::from_secs(1), format!("{total} vectors, {bad} mismatches, {t:.2?}"))
}

fn low_order_moments() -> Check {
    let cases = [
        (o(&[&[2]]), "1/d", [3, 4]),
        (o(&[&[4]]), "(3)/(d^2 + 2*d)", [3, 4]),
        (o(&[&[2, 2]]), "(1)/(d^2 + 2*d)", [3, 4]),
        (u(&[&[1]], &[&[1]]), "1/d", [3, 4]),
        (u(&[&[2]], &[&[2]]), "(2)/(d^2 + d)", [3, 4]),
        (sp(&[&[1]], &[&[0]], &[&[1]], &[&[0]]), "(1)/(2*d)", [2, 3]),
    ];
    let mut exact_bad = 0;
    let mut zs = Vec::new();
    for (k, (spec, expected, ds)) in cases.iter().enumerate() {
        if integrate(spec).value != rf(expected) {
            exact_bad += 1;
        }
        for &d in ds {
            zs.extend(mc_scores(spec.group(), std::slice::from_ref(spec), d, 100_000, 100 + k as u64 * 10 + d as u64));
        }
    }
    let zmax = max_of(&zs);
    check(exact_bad == 0 && zmax <= Z_OK, format!("{} exact, {exact_bad} mismatches, max |z| {zmax:.2} over {} MC runs", cases.len(), zs.len()))
}

fn two_vector_targets() -> Check {
    let cases = [
        (o(&[&[2, 0], &[0, 2]]), "(d + 1)/(d^3 + d^2 - 2*d)"),
        (o(&[&[1, 1], &[1, 1]]), "(-1)/(d^3 + d^2 - 2*d)"),
        (u(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]), "(1)/(d^2 - 1)"),
        (u(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]), "(-1)/(d^3 - d)"),
    ];
    let mut slowest = Duration::ZERO;
    let mut exact_bad = 0;
    for (spec, expected) in &cases {
        let t = Instant::now();
        let v = Integrator::new().integrate(spec).value;
        slowest = slowest.max(t.elapsed());
        if v != rf(expected) {
            exact_bad += 1;
        }
    }
    let mut zs = Vec::new();
    for group in [Group::Orthogonal, Group::Unitary] {
        let specs: Vec<ExponentSpec> = cases.iter().map(|c| c.0.clone()).filter(|s| s.group() == group).collect();
        for d in [3, 4] {
            zs.extend(mc_scores(group, &specs, d, 1_000_000, 200 + d as u64));
        }
    }
    let zmax = max_of(&zs);
    let pass = exact_bad == 0 && zmax <= Z_OK && slowest < Duration::from_secs(5);
    check(pass, format!("{exact_bad} mismatches, slowest {slowest:.2?}, max |z| {zmax:.2} at 10^6 samples"))
}

/// Every non-zero monomial in a `rows x cols` box with total degree at most
/// `max_degree`, grouped by canonical key; each class keeps its first and
/// last member in enumeration order.
fn monomial_classes(group: Group, rows: usize, cols: usize, max_degree: u32) -> Vec<Vec<ExponentSpec>> {
    let cells = rows * cols;
    let nvar = block_count(group) * cells;
    let mut classes: BTreeMap<MemoKey, (ExponentSpec, Option<ExponentSpec>)> = BTreeMap::new();
    let mut e = vec![0u32; nvar];
    fn walk(i: usize, left: u32, e: &mut [u32], visit: &mut dyn FnMut(&[u32])) {
        if i == e.len() {
            visit(e);
            return;
        }
        for v in 0..=left {
            e[i] = v;
            walk(i + 1, left - v, e, visit);
        }
        e[i] = 0;
    }
    walk(0, max_degree, &mut e, &mut |e| {
        if e.iter().all(|&x| x == 0) {
            return;
        }
        let blocks = (0..block_count(group))
            .map(|b| {
                let rows_v: Vec<&[u32]> = e[b * cells..(b + 1) * cells].chunks(cols).collect();
                ExponentMatrix::from_rows(&rows_v).unwrap()
            })
            .collect();
        let spec = make(group, blocks);
        match classes.entry(spec.memo_key()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((spec, None));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => o.get_mut().1 = Some(spec),
        }
    });
    classes.into_values().map(|(a, b)| std::iter::once(a).chain(b).collect()).collect()
}

fn monte_carlo_sweep() -> Check {
    let start = Instant::now();
    let plan = [
        (Group::Orthogonal, 3usize, 6u32),
        (Group::Orthogonal, 4, 6),
        (Group::Unitary, 3, 6),
        (Group::Unitary, 4, 6),
        (Group::Symplectic, 2, 4),
        (Group::Symplectic, 3, 4),
    ];
    let mut zs = Vec::new();
    let mut parts = Vec::new();
    for (k, &(group, d, deg)) in plan.iter().enumerate() {
        let classes = monomial_classes(group, d, d.min(3), deg);
        let specs: Vec<ExponentSpec> = classes.iter().flatten().cloned().collect();
        let local = mc_scores(group, &specs, d, 100_000, 300 + k as u64);
        parts.push(format!("{} d={d}: {} classes {} cases max {:.2}", group.name(), classes.len(), specs.len(), max_of(&local)));
        zs.extend(local);
    }
    let t = start.elapsed();
    let ok = zs.iter().filter(|&&z| z <= Z_OK).count();
    let frac = ok as f64 / zs.len() as f64;
    let zmax = max_of(&zs);
    let pass = frac >= 0.99 && zmax <= Z_MAX && t < Duration::from_secs(600);
    check(
        pass,
        format!("{ok}/{} within |z| <= 4 ({:.2}%), max |z| {zmax:.2}, {t:.1?} [{}]", zs.len(), 100.0 * frac, parts.join("; ")),
    )
}

/// A random spec of the given group with at most 3 rows and columns; about
/// half are balanced by construction.
fn random_spec(group: Group, rng: &mut ChaCha20Rng) -> ExponentSpec {
    let (r, c) = (rng.random_range(1..=3), rng.random_range(1..=3));
    let mut b = vec![ExponentMatrix::zeros(r, c); block_count(group)];
    let bump = |m: &mut ExponentMatrix, i: usize, j: usize, k: u32| {
        let v = m.get(i, j);
        m.set(i, j, v + k);
    };
    if rng.random_bool(0.5) {
        let cap = if group == Group::Symplectic { 4 } else { 6 };
        let mut deg = 0;
        while deg < cap && rng.random_bool(0.8) {
            let k = rng.random_range(0..b.len());
            bump(&mut b[k], rng.random_range(0..r), rng.random_range(0..c), 1);
            deg += 1;
        }
    } else {
        let tokens: Vec<(usize, usize, usize)> = (0..rng.random_range(0..=3))
            .map(|_| (rng.random_range(0..2), rng.random_range(0..r), rng.random_range(0..c)))
            .collect();
        let mut cols: Vec<usize> = tokens.iter().map(|t| t.2).collect();
        cols.shuffle(rng);
        for (&(kind, i, j), &j2) in tokens.iter().zip(&cols) {
            match group {
                Group::Orthogonal => {
                    bump(&mut b[0], i, j, 1);
                    bump(&mut b[0], i, j2, 1);
                    let i2 = rng.random_range(0..r);
                    bump(&mut b[0], i2, j, 1);
                    bump(&mut b[0], i2, j2, 1);
                }
                Group::Unitary => {
                    bump(&mut b[0], i, j, 1);
                    bump(&mut b[1], i, j2, 1);
                }
                Group::Symplectic => {
                    // w with w*, or z with z*, in one row
                    bump(&mut b[kind], i, j, 1);
                    bump(&mut b[kind + 2], i, j2, 1);
                }
            }
        }
    }
    make(group, b)
}

/// A random Haar-preserving relabelling: permutations from both sides, plus
/// transposition (O, U), conjugation (U, Sp), multiplication by the
/// symplectic form and full transposition (Sp).
fn random_symmetry(spec: &ExponentSpec, rng: &mut ChaCha20Rng) -> ExponentSpec {
    let (r, c) = spec.blocks()[0].shape();
    let mut rows: Vec<usize> = (0..r).collect();
    let mut cols: Vec<usize> = (0..c).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    let mut b: Vec<ExponentMatrix> = spec.blocks().into_iter().map(|m| m.select(&rows, &cols)).collect();
    match spec.group() {
        Group::Orthogonal => {
            if rng.random_bool(0.5) {
                b[0] = b[0].transpose();
            }
        }
        Group::Unitary => {
            if rng.random_bool(0.5) {
                b = b.iter().map(ExponentMatrix::transpose).collect();
            }
            if rng.random_bool(0.5) {
                b.swap(0, 1);
            }
        }
        Group::Symplectic => {
            if rng.random_bool(0.5) {
                b = vec![b[2].clone(), b[3].clone(), b[0].clone(), b[1].clone()];
            }
            if rng.random_bool(0.5) {
                b = vec![b[1].clone(), b[0].clone(), b[3].clone(), b[2].clone()];
            }
            if rng.random_bool(0.5) {
                b = vec![b[2].transpose(), b[1].transpose(), b[0].transpose(), b[3].transpose()];
            }
        }
    }
    make(spec.group(), b)
}

/// `sum_j <S x_ij> = <S>` over row `i` (or column), where `x` is `w^2`,
/// `|w|^2`, or `|w|^2 + |z|^2`.
fn sum_rule_holds(s: &ExponentSpec, line: usize, along_row: bool) -> bool {
    let (r, c) = s.blocks()[0].shape();
    let blocks: Vec<ExponentMatrix> = s.blocks().into_iter().map(|b| b.resized(r + 1, c + 1)).collect();
    let terms: Vec<Vec<usize>> = match s.group() {
        Group::Orthogonal => vec![vec![0, 0]],
        Group::Unitary => vec![vec![0, 1]],
        Group::Symplectic => vec![vec![0, 2], vec![1, 3]],
    };
    let len = if along_row { c } else { r };
    let fresh = RationalFunction::from_poly(PolyD::from_ints(&[-(len as i64), 1]));
    let mut total = RationalFunction::zero();
    for k in 0..=len {
        let (i, j) = if along_row { (line, k) } else { (k, line) };
        for term in &terms {
            let mut b = blocks.clone();
            for &t in term {
                let v = b[t].get(i, j);
                b[t].set(i, j, v + 1);
            }
            let v = integrate(&make(s.group(), b)).value;
            total = if k == len { &total + &(&v * &fresh) } else { &total + &v };
        }
    }
    total == integrate(s).value
}

fn invariance_suites() -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut nonzero = 0;
    let per_group = 250;
    for group in [Group::Orthogonal, Group::Unitary, Group::Symplectic] {
        for _ in 0..per_group {
            let s = random_spec(group, &mut rng);
            let value = integrate(&s);
            if !value.value.is_zero() {
                nonzero += 1;
            }
            let mut fail = |name| *failures.entry(name).or_default() += 1;
            let c = s.canonical();
            if c.canonical() != c {
                fail("idempotence");
            }
            let t = random_symmetry(&s, &mut rng);
            if t.canonical() != c || integrate(&t) != value {
                fail("orbit");
            }
            let padded = make(group, s.blocks().into_iter().map(|b| b.resized(b.rows() + 1, b.cols() + 1)).collect());
            let (_, occupied) = strip_zero_columns(&c);
            if integrate(&padded) != value || value.validity_floor != occupied {
                fail("zero-column");
            }
            if vanishes_trivially(&s) && !value.value.is_zero() {
                fail("vanishing");
            }
            let (r, cc) = s.blocks()[0].shape();
            let along_row = rng.random_bool(0.5);
            let line = rng.random_range(0..=if along_row { r } else { cc });
            if !sum_rule_holds(&s, line, along_row) {
                fail("sum rule");
            }
        }
    }
    let total: usize = failures.values().sum();
    check(total == 0, format!("{per_group} specs per group ({nonzero} non-zero), failures {failures:?}"))
}

fn appendix_coverage() -> Check {
    let mut bad = Vec::new();
    for m in 0..=8 {
        for n in 0..=8 {
            if n <= m && gaussian_f_by_recursion(m, n) != gaussian_f_closed_form(m, n) {
                bad.push(format!("recursion {m},{n}"));
            }
            if gaussian_f_closed_form(m, n).at_zero() != gaussian_f_at_zero(m, n) {
                bad.push(format!("origin {m},{n}"));
            }
            if gaussian_f_closed_form(m, n).conjugate_reflected() != gaussian_f_closed_form(n, m) {
                bad.push(format!("conjugation {m},{n}"));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for a in [Complex64::new(0.3, 0.1), Complex64::new(0.0, -0.7)] {
        for m in 0..=4 {
            for n in 0..=4 {
                let exact = gaussian_f_closed_form(m, n).evaluate(a);
                let numeric = gaussian_f_quadrature(m, n, a, 0.05);
                worst = worst.max((numeric - exact).norm() / exact.norm());
            }
        }
    }
    check(bad.is_empty() && worst <= 1e-8, format!("exact mismatches {bad:?}, worst quadrature relative error {worst:.1e}"))
}

fn memoization() -> Check {
    let spec = o(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
    let (mut cached, mut uncached) = (Duration::MAX, Duration::MAX);
    let mut same = true;
    for _ in 0..5 {
        let t = Instant::now();
        let a = Integrator::with_cache(Arc::new(MemoCache::new())).integrate(&spec);
        cached = cached.min(t.elapsed());
        let t = Instant::now();
        let b = Integrator::uncached().integrate(&spec);
        uncached = uncached.min(t.elapsed());
        same &= a == b;
    }
    let ratio = uncached.as_secs_f64() / cached.as_secs_f64();
    check(
        same && ratio >= 2.0,
        format!("degree {} with {} columns: identical {same}, cached {cached:.2?}, uncached {uncached:.2?}, speedup {ratio:.2}x", spec.degree(), spec.occupied_columns()),
    )
}

fn symplectic_cross_check() -> Check {
    let two = BigRational::from_integer(2.into());
    let zero = BigRational::from_integer(0.into());
    let doubled = |r: RationalFunction| {
        RationalFunction::new(r.numerator().compose_linear(&two, &zero), r.denominator().compose_linear(&two, &zero)).unwrap()
    };
    let (mut total, mut bad) = (0, 0);
    for rows in 1..=3usize {
        for code in 0..3u32.pow(rows as u32) {
            let m: Vec<u32> = (0..rows).map(|i| code / 3u32.pow(i as u32) % 3).collect();
            // balanced w-only monomials at one column have n = m
            let z = vec![0u32; rows];
            let col = ExponentMatrix::column_vector;
            let s: ExponentSpec = SymplecticSpec::new(col(&m), col(&z), col(&m), col(&z)).unwrap().into();
            total += 1;
            if integrate(&s).value != doubled(one_vector_unitary(&m, &m)) {
                bad += 1;
            }
        }
    }
    check(bad == 0, format!("{total} monomials, {bad} mismatches"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let checks: [Criterion; 8] = [
        ("one-vector orthogonal suite", one_vector_orthogonal_suite),
        ("known low-order moments", low_order_moments),
        ("two-vector recursion targets", two_vector_targets),
        ("Monte Carlo sweep", monte_carlo_sweep),
        ("invariance property suites", invariance_suites),
        ("Gaussian appendix coverage", appendix_coverage),
        ("memoization soundness and speedup", memoization),
        ("symplectic single-column cross-check", symplectic_cross_check),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (name, run) in checks {
        let c = run();
        if !c.pass {
            failed += 1;
        }
        writeln!(out, "{} {name}: {}", if c.pass { "PASS" } else { "FAIL" }, c.detail).unwrap();
        out.flush().unwrap();
    }
    writeln!(out, "acceptance: {} of {} checks passed", checks.len() - failed, checks.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
