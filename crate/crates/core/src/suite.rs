//! The verification suite: one row per checked claim, each row computed
//! exactly and, where possible, against an independent oracle.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, CatalogEntry};
use crate::constructor::{build_certificate, verify_certificate, CertificateViolation};
use crate::error::{Error, Result};
use crate::exceptional::{classify_singularity, connected_components, numerical_cycle, numerical_cycle_by, EffConfig, SingKind};
use crate::format::{parse_certificate, write_certificate};
use crate::lattice::{solve, DivClass, NamedClass, SurfaceModel};
use crate::quad::QuadBound;
use crate::rational::{fmt_q, q, qi, Q};
use crate::scan::{cone_scan, CellVerdict};
use crate::search::{default_generators, search, DEFAULT_CAP};
use crate::slope::{
    destabilizes, destabilizes_nef, mu_divisor, mu_surface, pseudo_epsilon, q_form, same_sign, seshadri_divisor,
    stability_polynomial_p, Mode, StabilityVerdict,
};
use crate::zerodim::{catalog_ideals, colength, fit_coefficients, mu_zero_dim, MonomialIdeal};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// `(number, id, title)` for every row.
pub const CRITERIA: [(u32, &str, &str); 13] = [
    (1, "product-slopes", "graph-of-cover product: exact mu(X,L) and mu_c(O_D,L)"),
    (2, "product-asymptotics", "graph-of-cover product: mu_c(O_D) tends to -3/(2c) within d <= 200"),
    (3, "dp1-universality", "dp1: E destabilises every polarisation aH-bE, 3 <= a/b <= 10"),
    (4, "seshadri-values", "dp1: Seshadri constants of H-E and H at 3H-E"),
    (5, "zero-dim", "monomial ideals: colengths and zero-dimensional slopes"),
    (6, "constructor", "destabilising polarisation certificates, end to end"),
    (7, "p-sign", "sign of P(c) equals sign of mu_c - mu"),
    (8, "q-form", "Q(A,D) >= 0 under its hypotheses; superadditivity"),
    (9, "square-nonneg", "D^2 >= 0 never pseudo-destabilises when K is pseudoeffective"),
    (10, "nef-divisors", "nef divisors never destabilise"),
    (11, "dp2-search", "dp2 at -K: bounded search finds no destabiliser"),
    (12, "fundamental-cycles", "numerical cycles of D4 and A2: values, order, minimality"),
    (13, "genus-filter", "unstable verdicts with K.L >= 0 have p_a(D) >= 2"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub number: u32,
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<20} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.id,
            self.detail
        )
    }
}

/// Every unstable verdict produced while running the suite.
#[derive(Clone, Debug, Default)]
pub struct Journal {
    pub entries: Vec<UnstableRecord>,
}

#[derive(Clone, Debug)]
pub struct UnstableRecord {
    pub source: String,
    pub surface: String,
    pub kl: Q,
    pub pa: Q,
}

impl Journal {
    fn record(&mut self, source: &str, s: &SurfaceModel, l: &DivClass, d: &DivClass, v: &StabilityVerdict) -> Result<()> {
        if v.is_unstable() {
            self.entries.push(UnstableRecord {
                source: source.to_string(),
                surface: s.name().to_string(),
                kl: s.pair(s.canonical(), l)?,
                pa: s.arithmetic_genus(d)?,
            });
        }
        Ok(())
    }
}

/// Resolves a row selector, given as its number or its id.
pub fn lookup(sel: &str) -> Option<u32> {
    CRITERIA.iter().find(|(n, id, _)| *id == sel || n.to_string() == sel).map(|(n, _, _)| *n)
}

/// Runs the suite. With `only`, just that row is reported; the genus filter
/// row still runs everything before it to fill its journal.
pub fn run_suite(only: Option<u32>, seed: u64) -> Vec<CriterionResult> {
    let mut journal = Journal::default();
    let last = only.unwrap_or(13);
    let mut out = Vec::new();
    for (n, id, title) in CRITERIA {
        let wanted = only.is_none_or(|o| o == n);
        let needed = wanted || last == 13;
        if !needed || n > last {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(n)));
        let outcome = run_one(n, &mut rng, &mut journal);
        if wanted {
            let (passed, detail) = match outcome {
                Ok(x) => x,
                Err(e) => (false, format!("error: {e}")),
            };
            out.push(CriterionResult { number: n, id, title, passed, detail });
        }
    }
    out
}

type Outcome = Result<(bool, String)>;

fn run_one(n: u32, rng: &mut ChaCha8Rng, journal: &mut Journal) -> Outcome {
    match n {
        1 => product_slopes(journal),
        2 => product_asymptotics(),
        3 => dp1_universality(journal),
        4 => seshadri_values(),
        5 => zero_dim(rng),
        6 => constructor(journal),
        7 => p_sign(rng),
        8 => q_form_suite(rng),
        9 => square_nonneg(rng, journal),
        10 => nef_divisors(rng, journal),
        11 => dp2_search(journal),
        12 => fundamental_cycles(rng),
        13 => genus_filter(journal),
        _ => Err(Error::Invalid(format!("no criterion {n}"))),
    }
}

fn fail(msg: String) -> Outcome {
    Ok((false, msg))
}

fn entry(key: &str) -> Result<CatalogEntry> {
    catalog::get(key)
}

fn boundary(e: &CatalogEntry, label: &str) -> Result<DivClass> {
    e.featured_boundary
        .iter()
        .chain(&e.featured_divisors)
        .chain(&e.featured_polarisations)
        .find(|c| c.label == label)
        .map(|c| c.cls.clone())
        .ok_or_else(|| Error::Invalid(format!("{}: no featured class {label}", e.key)))
}

/// `3(2 - c(d(2g-2) + 2g)) / (2c(3 - c(d(2-2g) + 2)))`.
fn product_mu_formula(g: i64, d: i64, c: &Q) -> Q {
    let (g, d) = (qi(g), qi(d));
    let num = qi(3) * (qi(2) - c * (&d * (qi(2) * &g - qi(2)) + qi(2) * &g));
    let den = qi(2) * c * (qi(3) - c * (&d * (qi(2) - qi(2) * &g) + qi(2)));
    num / den
}

fn product_slopes(journal: &mut Journal) -> Outcome {
    let cs = [q(1, 10), q(3, 16), q(1, 2)];
    let mut checked = 0;
    for g in [2, 3] {
        for d in [2, 5, 10] {
            let e = entry(&format!("product({g},{d})"))?;
            let s = &e.model;
            let l = boundary(&e, "L")?;
            let dv = boundary(&e, "Fg+E")?;
            let mu = mu_surface(s, &l)?;
            if mu != qi(-2 * g) {
                return fail(format!("g={g} d={d}: mu(X,L) = {} not {}", fmt_q(&mu), -2 * g));
            }
            for c in &cs {
                let got = mu_divisor(s, &l, &dv, c)?;
                let want = product_mu_formula(g, d, c);
                if got != want {
                    return fail(format!("g={g} d={d} c={}: {} vs {}", fmt_q(c), fmt_q(&got), fmt_q(&want)));
                }
                checked += 1;
            }
            let v = destabilizes_nef(s, &l, &dv, Mode::Strict)?;
            journal.record("product-slopes", s, &l, &dv, &v)?;
        }
    }
    Ok((true, format!("mu = -2g on 6 surfaces; {checked} exact mu_c values match")))
}

/// Smallest `d` at which `mu_c < -3/(2c) + 1/10` for `g = 2, c = 3/16`,
/// searching up to `limit`, and whether `mu_c` decreased strictly on the way.
pub fn product_crossing(limit: i64) -> Result<(Option<i64>, bool)> {
    let c = q(3, 16);
    let target = -qi(3) / (qi(2) * &c) + q(1, 10);
    let mut prev: Option<Q> = None;
    let mut decreasing = true;
    for d in 1..=limit {
        let e = entry(&format!("product(2,{d})"))?;
        let mu = mu_divisor(&e.model, &boundary(&e, "L")?, &boundary(&e, "Fg+E")?, &c)?;
        if let Some(p) = &prev {
            decreasing &= mu < *p;
        }
        if mu < target {
            return Ok((Some(d), decreasing));
        }
        prev = Some(mu);
    }
    Ok((None, decreasing))
}

fn product_asymptotics() -> Outcome {
    let (within, decreasing) = product_crossing(200)?;
    if !decreasing {
        return fail("mu_c(O_D) is not strictly decreasing in d".into());
    }
    match within {
        Some(d) => Ok((true, format!("first crossing at d = {d}"))),
        None => {
            let (first, _) = product_crossing(5000)?;
            let first = first.map_or("beyond 5000".to_string(), |d| format!("at d = {d}"));
            fail(format!("no crossing for d <= 200 (mu_c decreasing); first crossing {first}"))
        }
    }
}

fn dp1_universality(journal: &mut Journal) -> Outcome {
    let e = entry("dp1")?;
    let s = &e.model;
    let ecls = DivClass::from_ints(&[0, 1]);
    let divisors = vec![NamedClass::new("E", ecls.clone())];
    let r = cone_scan(s, &DivClass::from_ints(&[3, -1]), &DivClass::from_ints(&[10, -1]), 51, &divisors, Mode::Strict)?;
    if r.cells.len() != 50 {
        return fail(format!("{} cells", r.cells.len()));
    }
    for cell in &r.cells {
        let a = cell.polarisation.coeffs()[0].clone();
        let b = -cell.polarisation.coeffs()[1].clone();
        let ratio = &a / &b;
        if ratio < qi(3) || ratio > qi(10) {
            return fail(format!("t={} outside 3 <= a/b <= 10", fmt_q(&cell.t)));
        }
        let Some((label, c)) = &cell.witness else {
            return fail(format!("t={}: no witness", fmt_q(&cell.t)));
        };
        if cell.verdict != CellVerdict::Unstable || label != "E" {
            return fail(format!("t={}: verdict {}", fmt_q(&cell.t), cell.verdict.as_str()));
        }
        // 6(b+c)(a^2-b^2) < 2c(3a-b)(3b+c), with 0 < c <= a-b
        let lhs = qi(6) * (&b + c) * (&a * &a - &b * &b);
        let rhs = qi(2) * c * (qi(3) * &a - &b) * (qi(3) * &b + c);
        if !(lhs < rhs && c.is_positive() && *c <= &a - &b) {
            return fail(format!("t={}: witness c = {} fails the cell inequality", fmt_q(&cell.t), fmt_q(c)));
        }
        let v = destabilizes(s, &cell.polarisation, &ecls, Mode::Strict)?;
        if !v.is_unstable() {
            return fail(format!("t={}: witness does not re-verify", fmt_q(&cell.t)));
        }
        journal.record("dp1-universality", s, &cell.polarisation, &ecls, &v)?;
    }
    Ok((true, "50/50 cells unstable; every witness satisfies its exact cell inequality".into()))
}

fn seshadri_values() -> Outcome {
    let s = entry("dp1")?.model;
    let l = DivClass::from_ints(&[3, -1]);
    let a = seshadri_divisor(&s, &l, &DivClass::from_ints(&[1, -1]))?.value;
    let b = seshadri_divisor(&s, &l, &DivClass::from_ints(&[1, 0]))?.value;
    let ok = a == QuadBound::rational(qi(1)) && b == QuadBound::rational(qi(2));
    Ok((ok, format!("eps(H-E) = {a}, eps(H) = {b}")))
}

/// Counts monomials outside `I^j`, building `I^j` from all `j`-fold sums of
/// generator exponents and testing every lattice point of a bounding box.
pub fn brute_colength(gens: &[(u32, u32)], j: u32) -> u64 {
    let mut pts: BTreeSet<(u32, u32)> = BTreeSet::from([(0, 0)]);
    for _ in 0..j {
        pts = pts.iter().flat_map(|&(a, b)| gens.iter().map(move |&(c, d)| (a + c, b + d))).collect();
    }
    let amax = gens.iter().map(|g| g.0).max().unwrap_or(0) * j;
    let bmax = gens.iter().map(|g| g.1).max().unwrap_or(0) * j;
    let mut n = 0;
    for a in 0..=amax {
        for b in 0..=bmax {
            if !pts.iter().any(|&(x, y)| x <= a && y <= b) {
                n += 1;
            }
        }
    }
    n
}

fn zero_dim(rng: &mut ChaCha8Rng) -> Outcome {
    for n in 1..=6u32 {
        let ideal = MonomialIdeal::curvilinear(n);
        for j in 1..=12u32 {
            let got = colength(&ideal, j)?;
            let formula = u64::from(n * j * (j + 1) / 2);
            let brute = brute_colength(&[(1, 0), (0, n)], j);
            if got != formula || got != brute {
                return fail(format!("(x,y^{n})^{j}: {got}, formula {formula}, count {brute}"));
            }
        }
    }
    let cs: Vec<Q> = (0..20).map(|_| Q::new(rng.random_range(1..=60i64).into(), rng.random_range(1..=12i64).into())).collect();
    for n in 1..=6 {
        let h = fit_coefficients(&MonomialIdeal::curvilinear(n))?;
        for c in &cs {
            if mu_zero_dim(&h, c)? != qi(3) / c {
                return fail(format!("(x,y^{n}): slope at c={} is not 3/c", fmt_q(c)));
            }
        }
    }
    let h = fit_coefficients(&MonomialIdeal::max_power(2))?;
    for c in &cs {
        if mu_zero_dim(&h, c)? != qi(9) / (qi(4) * c) {
            return fail(format!("m^2: slope at c={} is not 9/(4c)", fmt_q(c)));
        }
    }
    let ideals = catalog_ideals();
    for (name, ideal) in &ideals {
        let h = fit_coefficients(ideal)?;
        for c in &cs {
            let mu = mu_zero_dim(&h, c)?;
            if mu <= qi(3) / (qi(2) * c) {
                return fail(format!("{name}: slope {} at c={} not above 3/(2c)", fmt_q(&mu), fmt_q(c)));
            }
        }
    }
    Ok((true, format!("colengths n<=6, j<=12 match; {} ideals above 3/(2c) at 20 values of c", ideals.len())))
}

fn constructor(journal: &mut Journal) -> Outcome {
    let e = entry("synthetic-highgenus")?;
    let cfg = e.config_named("C").ok_or_else(|| Error::Invalid("config C".into()))?;
    let cert = build_certificate(&e.model, cfg, &boundary(&e, "A")?)?;
    if cert.q != vec![qi(1)] || cert.epsilon_floor != qi(1) || cert.c != q(1, 2) {
        return fail(format!("synthetic: q={:?} eps={} c={}", cert.q, fmt_q(&cert.epsilon_floor), fmt_q(&cert.c)));
    }
    if let Err(v) = verify_certificate(&cert) {
        return fail(format!("synthetic certificate rejected: {v}"));
    }
    let reread = parse_certificate(&write_certificate(&cert))?;
    if reread != cert || verify_certificate(&reread).is_err() {
        return fail("synthetic certificate does not survive a file round trip".into());
    }
    let dcls = cfg.total(&e.model)?;
    let v = destabilizes(&e.model, &cert.l_s, &dcls, Mode::Strict)?;
    journal.record("constructor", &e.model, &cert.l_s, &dcls, &v)?;

    let e = entry("blownup-quartic(17)")?;
    let cfg = e.config_named("C").ok_or_else(|| Error::Invalid("config C".into()))?;
    let quartic = build_certificate(&e.model, cfg, &boundary(&e, "5H-E")?)?;
    if !quartic.conditional {
        return fail("blownup-quartic(17) certificate is not marked conditional".into());
    }
    if let Err(v) = verify_certificate(&quartic) {
        return fail(format!("blownup-quartic(17) certificate rejected: {v}"));
    }
    let dcls = cfg.total(&e.model)?;
    let v = destabilizes(&e.model, &quartic.l_s, &dcls, Mode::Strict)?;
    journal.record("constructor", &e.model, &quartic.l_s, &dcls, &v)?;

    let mut tampered: Vec<(&str, crate::constructor::Certificate, CertificateViolation)> = Vec::new();
    let mut t = cert.clone();
    t.c = q(3, 2);
    tampered.push(("c", t, CertificateViolation::CRange));
    let mut t = cert.clone();
    t.q = vec![qi(2)];
    tampered.push(("q", t, CertificateViolation::Orthogonality("C".into())));
    let mut t = cert.clone();
    t.s = &cert.s / qi(2);
    tampered.push(("s", t, CertificateViolation::LsMismatch));
    let mut t = cert.clone();
    t.mu_d = &cert.mu_d + qi(1);
    tampered.push(("mu_D", t, CertificateViolation::SlopeValues));
    let mut t = cert.clone();
    t.conditional = !cert.conditional;
    tampered.push(("conditional", t, CertificateViolation::ConditionalFlag));
    for (what, t, want) in &tampered {
        match verify_certificate(t) {
            Err(got) if got == *want => {}
            other => return fail(format!("tampered {what}: expected {want}, got {other:?}")),
        }
    }
    Ok((
        true,
        format!(
            "synthetic s = {}, quartic s = {} (conditional); {} tampered certificates rejected",
            fmt_q(&cert.s),
            fmt_q(&quartic.s),
            tampered.len()
        ),
    ))
}

fn rand_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Q {
    let d = rng.random_range(1..=den);
    Q::new(rng.random_range(lo * d..=hi * d).into(), d.into())
}

/// Positive combination of the featured polarisations, nudged along the
/// basis; falls back to the first polarisation.
fn random_ample(e: &CatalogEntry, rng: &mut ChaCha8Rng) -> Result<DivClass> {
    let s = &e.model;
    for _ in 0..200 {
        let mut l = DivClass::zero(s.rank());
        for p in &e.featured_polarisations {
            l = l.add_scaled(&qi(rng.random_range(1..=3)), &p.cls);
        }
        for i in 0..s.rank() {
            l = l.add_scaled(&rand_q(rng, -1, 1, 4), &DivClass::basis_vector(s.rank(), i));
        }
        if s.is_ample(&l)?.passes() {
            return Ok(l);
        }
    }
    Ok(e.featured_polarisations[0].cls.clone())
}

/// Nonnegative integer combination of roster curves and featured classes.
fn random_effective(e: &CatalogEntry, rng: &mut ChaCha8Rng, max: i64) -> DivClass {
    let gens: Vec<&DivClass> = e
        .model
        .curves()
        .iter()
        .map(|c| &c.cls)
        .chain(e.featured_divisors.iter().map(|c| &c.cls))
        .chain(e.featured_polarisations.iter().map(|c| &c.cls))
        .collect();
    loop {
        let mut d = DivClass::zero(e.model.rank());
        for g in &gens {
            if rng.random_bool(0.6) {
                d = d.add_scaled(&qi(rng.random_range(0..=max)), g);
            }
        }
        if !d.is_zero() {
            return d;
        }
    }
}

fn all_entries() -> Result<Vec<CatalogEntry>> {
    catalog::keys().iter().map(|k| entry(k)).collect()
}

fn p_sign(rng: &mut ChaCha8Rng) -> Outcome {
    let entries = all_entries()?;
    let mut trials = 0;
    let mut signs = [0usize; 3];
    while trials < 1000 {
        let e = &entries[rng.random_range(0..entries.len())];
        let s = &e.model;
        let l = random_ample(e, rng)?;
        // half the draws use a single curve, where instability is common
        let d = if rng.random_bool(0.5) {
            let cs = s.curves();
            cs[rng.random_range(0..cs.len())].cls.scale(&qi(rng.random_range(1..=3)))
        } else {
            random_effective(e, rng, 4)
        };
        if s.pair(&l, &d)? <= qi(0) {
            continue;
        }
        let eps = pseudo_epsilon(s, &l, &d)?;
        let floor = eps.round_down(&1_000_000.into(), true);
        if !floor.is_positive() {
            continue;
        }
        let u = Q::new(rng.random_range(1..=99i64).into(), 100.into());
        let mut c = &floor * &u;
        if rng.random_bool(0.5) {
            // draw from the destabilising window when there is one
            if let Some((lo, hi)) = destabilizes(s, &l, &d, Mode::Pseudo)?.unstable_region {
                let den = 1_000_000.into();
                let (a, b) = (lo.round_up(&den, true), hi.round_down(&den, true));
                if a < b {
                    c = &a + (b - &a) * u;
                }
            }
        }
        let p = stability_polynomial_p(s, &l, &d, &c)?;
        let diff = mu_divisor(s, &l, &d, &c)? - mu_surface(s, &l)?;
        if !same_sign(&p, &diff) {
            return fail(format!(
                "{}: L={:?} D={:?} c={}: P={} but mu_c-mu={}",
                s.name(),
                l,
                d,
                fmt_q(&c),
                fmt_q(&p),
                fmt_q(&diff)
            ));
        }
        let slot = if diff.is_negative() {
            0
        } else if diff.is_zero() {
            1
        } else {
            2
        };
        signs[slot] += 1;
        trials += 1;
    }
    Ok((true, format!("1000 trials agree (negative {}, zero {}, positive {})", signs[0], signs[1], signs[2])))
}

/// Coordinates of `d` in the roster curves when they form a basis.
fn roster_coordinates(s: &SurfaceModel, d: &DivClass) -> Option<Vec<Q>> {
    let n = s.rank();
    if s.curves().len() != n {
        return None;
    }
    // columns are the curves: M x = d
    let m: Vec<Vec<Q>> = (0..n).map(|i| s.curves().iter().map(|c| c.cls.coeffs()[i].clone()).collect()).collect();
    solve(&m, d.coeffs())
}

fn is_pseudoeffective(s: &SurfaceModel, d: &DivClass) -> Result<bool> {
    roster_coordinates(s, d)
        .map(|x| x.iter().all(|v| !v.is_negative()))
        .ok_or_else(|| Error::Invalid(format!("{}: roster is not a basis", s.name())))
}

const SIMPLICIAL: [&str; 9] = [
    "p2",
    "dp1",
    "dp2",
    "hirzebruch(0)",
    "hirzebruch(1)",
    "hirzebruch(2)",
    "hirzebruch(3)",
    "verygen-product(2,2)",
    "verygen-product(2,3)",
];

fn q_form_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let entries: Vec<CatalogEntry> = SIMPLICIAL.iter().map(|k| entry(k)).collect::<Result<_>>()?;
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 500 {
        attempts += 1;
        if attempts > 200_000 {
            return fail(format!("only {accepted} instances met the hypotheses"));
        }
        let e = &entries[rng.random_range(0..entries.len())];
        let s = &e.model;
        let mut d = DivClass::zero(s.rank());
        for c in s.curves() {
            d = d.add_scaled(&rand_q(rng, 0, 4, 3), &c.cls);
        }
        let k2d = s.canonical().add_scaled(&qi(2), &d);
        if s.square(&d)?.is_negative() || s.square(&k2d)?.is_negative() || !is_pseudoeffective(s, &k2d)? {
            continue;
        }
        let a = random_ample(e, rng)?;
        let v = q_form(s, &a, &d)?;
        if v.is_negative() {
            return fail(format!("{}: Q(A,D) = {} for A={:?} D={:?}", s.name(), fmt_q(&v), a, d));
        }
        accepted += 1;
    }
    // pairs of roster curves with zero intersection, scaled
    let mut pairs: Vec<(CatalogEntry, DivClass, DivClass)> = Vec::new();
    for e in all_entries()? {
        let cs = e.model.curves().to_vec();
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i..] {
                if e.model.pair(&a.cls, &b.cls)?.is_zero() {
                    pairs.push((e.clone(), a.cls.clone(), b.cls.clone()));
                }
            }
        }
    }
    if pairs.is_empty() {
        return fail("no orthogonal roster pairs".into());
    }
    for _ in 0..200 {
        let (e, c1, c2) = &pairs[rng.random_range(0..pairs.len())];
        let s = &e.model;
        let d1 = c1.scale(&rand_q(rng, 1, 5, 3));
        let d2 = c2.scale(&rand_q(rng, 1, 5, 3));
        let a = random_ample(e, rng)?;
        let lhs = q_form(s, &a, &(&d1 + &d2))?;
        let rhs = q_form(s, &a, &d1)? + q_form(s, &a, &d2)?;
        // with D1.D2 = 0 the excess is exactly 8(A.D1)(A.D2)
        let excess = qi(8) * s.pair(&a, &d1)? * s.pair(&a, &d2)?;
        if lhs < rhs || &lhs - &rhs != excess {
            return fail(format!("{}: superadditivity fails for D1={:?} D2={:?}", s.name(), d1, d2));
        }
    }
    Ok((true, format!("500 instances with Q >= 0 ({attempts} draws); 200 superadditive pairs")))
}

fn square_nonneg(rng: &mut ChaCha8Rng, journal: &mut Journal) -> Outcome {
    let entries: Vec<CatalogEntry> = all_entries()?.into_iter().filter(|e| e.model.kodaira_nonneg()).collect();
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 500 {
        attempts += 1;
        if attempts > 100_000 {
            return fail(format!("only {accepted} instances met the hypotheses"));
        }
        let e = &entries[rng.random_range(0..entries.len())];
        let s = &e.model;
        let d = random_effective(e, rng, 3);
        let k = s.canonical();
        let kd = s.pair(k, &d)?;
        let hyp = qi(4) * &kd + s.square(k)? >= qi(0) || kd <= qi(0);
        if s.square(&d)?.is_negative() || !hyp {
            continue;
        }
        let l = random_ample(e, rng)?;
        if s.pair(&l, &d)? <= qi(0) {
            continue;
        }
        let v = destabilizes(s, &l, &d, Mode::Pseudo)?;
        journal.record("square-nonneg", s, &l, &d, &v)?;
        if v.is_unstable() {
            return fail(format!("{}: D={:?} pseudo-destabilises L={:?}", s.name(), d, l));
        }
        accepted += 1;
    }
    Ok((true, format!("500 instances on {} models, none pseudo-destabilising", entries.len())))
}

fn nef_divisors(rng: &mut ChaCha8Rng, journal: &mut Journal) -> Outcome {
    let entries: Vec<CatalogEntry> = all_entries()?.into_iter().filter(|e| e.model.curves_complete()).collect();
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 500 {
        attempts += 1;
        if attempts > 100_000 {
            return fail(format!("only {accepted} nef samples"));
        }
        let e = &entries[rng.random_range(0..entries.len())];
        let s = &e.model;
        let d = DivClass::new((0..s.rank()).map(|_| qi(rng.random_range(-5..=5))).collect());
        if d.is_zero() || !s.is_nef(&d)?.passes() {
            continue;
        }
        let l = random_ample(e, rng)?;
        let v = destabilizes(s, &l, &d, Mode::Strict)?;
        journal.record("nef-divisors", s, &l, &d, &v)?;
        if v.is_unstable() {
            return fail(format!("{}: nef D={:?} destabilises L={:?}", s.name(), d, l));
        }
        accepted += 1;
    }
    Ok((true, format!("500 nef divisors on {} models ({attempts} draws), none destabilising", entries.len())))
}

fn dp2_search(journal: &mut Journal) -> Outcome {
    let e = entry("dp2")?;
    let s = &e.model;
    let l = boundary(&e, "-K")?;
    let gens = default_generators(s);
    let labels: Vec<&str> = gens.iter().map(|g| g.label.as_str()).collect();
    if labels != ["E1", "E2", "H-E1-E2"] {
        return fail(format!("generators {labels:?}"));
    }
    let start = Instant::now();
    let r = search(s, &l, &gens, 15, Mode::Strict, DEFAULT_CAP)?;
    let secs = start.elapsed().as_secs_f64();
    for h in &r.hits {
        journal.record("dp2-search", s, &l, &h.class, &h.verdict)?;
    }
    let ok = r.hits.is_empty() && secs < 10.0;
    Ok((ok, format!("{} in {secs:.2} s", r.summary())))
}

fn shuffled(cfg: &EffConfig, rng: &mut ChaCha8Rng) -> Result<EffConfig> {
    let mut comps = cfg.components().to_vec();
    for i in (1..comps.len()).rev() {
        comps.swap(i, rng.random_range(0..=i));
    }
    EffConfig::new(comps)
}

fn mults_by_label(z: &EffConfig) -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = z.components().iter().map(|c| (c.label.clone(), c.multiplicity)).collect();
    v.sort();
    v
}

/// Every anti-nef cycle `sum m_i C_i` with `1 <= m_i <= bound` dominates `z`.
fn minimal_by_exhaustion(s: &SurfaceModel, z: &EffConfig, bound: u64) -> Result<bool> {
    let gram = z.gram(s)?;
    let n = z.len();
    let zm = z.multiplicities();
    let anti_nef = |m: &[u64]| (0..n).all(|j| (0..n).map(|i| qi(m[i] as i64) * &gram[i][j]).sum::<Q>() <= qi(0));
    if !anti_nef(&zm) {
        return Ok(false);
    }
    let mut m = vec![1u64; n];
    loop {
        if anti_nef(&m) && m.iter().zip(&zm).any(|(a, b)| a < b) {
            return Ok(false);
        }
        let mut i = 0;
        while i < n && m[i] == bound {
            m[i] = 1;
            i += 1;
        }
        if i == n {
            return Ok(true);
        }
        m[i] += 1;
    }
}

fn fundamental_cycles(rng: &mut ChaCha8Rng) -> Outcome {
    let d4 = entry("d4-config")?;
    let a2 = entry("a2-config")?;
    let d4cfg = d4.config_named("D4").ok_or_else(|| Error::Invalid("config D4".into()))?.clone();
    let a2cfg = a2.config_named("A2").ok_or_else(|| Error::Invalid("config A2".into()))?.clone();
    let z = numerical_cycle(&d4.model, &d4cfg)?;
    let sing = classify_singularity(&d4.model, &d4cfg)?;
    let pa = d4.model.arithmetic_genus(&z.total(&d4.model)?)?;
    if z.multiplicities() != [2, 1, 1, 1] || !pa.is_zero() || sing.kind != SingKind::Rational {
        return fail(format!("D4: {:?} with p_a {}", z.multiplicities(), fmt_q(&pa)));
    }
    let za = numerical_cycle(&a2.model, &a2cfg)?;
    let pa = a2.model.arithmetic_genus(&za.total(&a2.model)?)?;
    if za.multiplicities() != [1, 1] || !pa.is_zero() {
        return fail(format!("A2: {:?} with p_a {}", za.multiplicities(), fmt_q(&pa)));
    }
    for (e, cfg, want) in [(&d4, &d4cfg, &z), (&a2, &a2cfg, &za)] {
        for _ in 0..20 {
            let sh = shuffled(cfg, rng)?;
            let run = numerical_cycle_by(&e.model, &sh, |c| c[rng.random_range(0..c.len())])?;
            if mults_by_label(&run.cycle) != mults_by_label(want) {
                return fail(format!("{}: shuffled run gave {:?}", e.key, mults_by_label(&run.cycle)));
            }
        }
    }
    // every connected sub-configuration of at most three curves
    let mut checked = 0;
    for (e, cfg) in [(&d4, &d4cfg), (&a2, &a2cfg)] {
        let comps = cfg.components();
        for mask in 1u32..(1 << comps.len()) {
            if mask.count_ones() > 3 {
                continue;
            }
            let sub = EffConfig::new(
                comps.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, c)| c.clone()).collect(),
            )?;
            if connected_components(&e.model, &sub)?.len() != 1 {
                continue;
            }
            let zs = numerical_cycle(&e.model, &sub)?;
            let bound = zs.multiplicities().into_iter().max().unwrap_or(1) + 2;
            if !minimal_by_exhaustion(&e.model, &zs, bound)? {
                return fail(format!("{}: {:?} is not the least anti-nef cycle", e.key, mults_by_label(&zs)));
            }
            checked += 1;
        }
    }
    Ok((true, format!("D4 = 2,1,1,1 and A2 = 1,1 with p_a 0; 40 shuffled runs agree; {checked} supports minimal")))
}

fn genus_filter(journal: &mut Journal) -> Outcome {
    let relevant: Vec<&UnstableRecord> = journal.entries.iter().filter(|r| !r.kl.is_negative()).collect();
    if let Some(bad) = relevant.iter().find(|r| r.pa < qi(2)) {
        return fail(format!("{} on {}: p_a = {} with K.L = {}", bad.source, bad.surface, fmt_q(&bad.pa), fmt_q(&bad.kl)));
    }
    Ok((
        true,
        format!("{} unstable verdicts, {} with K.L >= 0, all with p_a >= 2", journal.entries.len(), relevant.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(lookup("3"), Some(3));
        assert_eq!(lookup("dp2-search"), Some(11));
        assert_eq!(lookup("nope"), None);
    }

    #[test]
    fn brute_colength_agrees_with_staircase() {
        for (_, i) in catalog_ideals().into_iter().take(8) {
            for j in 1..=4 {
                assert_eq!(brute_colength(i.generators(), j), colength(&i, j).unwrap());
            }
        }
    }

    #[test]
    fn product_formula_at_the_worked_value() {
        // g = 2, c = 3/16: 8(10 - 3d)/(21 + 3d)
        for d in [1, 7, 50] {
            assert_eq!(product_mu_formula(2, d, &q(3, 16)), Q::new((8 * (10 - 3 * d)).into(), (21 + 3 * d).into()));
        }
    }
}
