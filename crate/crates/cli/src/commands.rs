use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Signed;
use serde_json::{json, Value};
use slopestab::catalog;
use slopestab::constructor::{build_certificate, verify_certificate, Certificate};
use slopestab::exceptional::EffConfig;
use slopestab::format::{parse_certificate, parse_class, parse_config, parse_surface, write_certificate, write_class, write_surface, SurfaceFile};
use slopestab::rational::{fmt_q, parse_rational, to_f64};
use slopestab::scan::{self, ScanReport};
use slopestab::search::{self, default_generators};
use slopestab::slope::{destabilizes, mu_divisor, mu_surface, pseudo_epsilon, seshadri_divisor, Mode, StabilityVerdict};
use slopestab::suite;
use slopestab::{DivClass, NamedClass, QuadBound, Q};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const PARSE: u8 = 2;
pub const INVALID: u8 = 3;
pub const CONDITIONAL: u8 = 4;
pub const UNSTABLE: u8 = 10;

pub struct Opts {
    pub json: bool,
    pub strict_certainty: bool,
}

#[derive(Debug)]
pub enum CliError {
    Core(slopestab::Error),
    Read(PathBuf, std::io::Error),
    Write(PathBuf, std::io::Error),
    BadRational(String),
    NotFound(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Read(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            CliError::Write(p, e) => write!(f, "cannot write {}: {e}", p.display()),
            CliError::BadRational(s) => write!(f, "not a rational number: {s:?}"),
            CliError::NotFound(s) => write!(f, "{s:?} is neither a readable file nor a catalog key"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(slopestab::Error::Parse { .. } | slopestab::Error::ClassSyntax { .. }) => PARSE,
            CliError::Read(..) | CliError::BadRational(_) => PARSE,
            CliError::Core(_) | CliError::NotFound(_) => INVALID,
            CliError::Write(..) => FAILED,
        }
    }
}

impl From<slopestab::Error> for CliError {
    fn from(e: slopestab::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A surface file path, or failing that a catalog key.
fn load(source: &str) -> Result<SurfaceFile> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))?;
        return Ok(parse_surface(&text)?);
    }
    match catalog::get(source) {
        Ok(e) => Ok(e.into()),
        Err(slopestab::Error::UnknownCatalogKey(_)) => Err(CliError::NotFound(source.to_string())),
        Err(e) => Err(e.into()),
    }
}

/// Class syntax first, then featured and roster labels.
fn resolve_class(f: &SurfaceFile, text: &str) -> Result<DivClass> {
    match parse_class(&f.model, text) {
        Ok(c) => Ok(c),
        Err(err) => f
            .featured_polarisations
            .iter()
            .chain(&f.featured_boundary)
            .chain(&f.featured_divisors)
            .find(|c| c.label == text)
            .map(|c| c.cls.clone())
            .or_else(|| f.model.curve(text).map(|c| c.cls.clone()))
            .ok_or(CliError::Core(err)),
    }
}

fn resolve_config(f: &SurfaceFile, text: &str) -> Result<EffConfig> {
    if let Some((_, c)) = f.featured_configs.iter().find(|(l, _)| l == text) {
        return Ok(c.clone());
    }
    Ok(parse_config(&f.model, text)?)
}

fn rational(text: &str) -> Result<Q> {
    parse_rational(text).ok_or_else(|| CliError::BadRational(text.to_string()))
}

fn cls(f: &SurfaceFile, c: &DivClass) -> String {
    write_class(f.model.basis(), c)
}

fn quad_json(x: &QuadBound) -> Value {
    json!({ "exact": x.to_string(), "approx": x.to_f64() })
}

fn q_json(x: &Q) -> Value {
    json!(fmt_q(x))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialise"));
}

fn finish(opts: &Opts, conditional: bool, code: u8) -> u8 {
    if opts.strict_certainty && conditional {
        eprintln!("result depends on an incomplete curve roster");
        CONDITIONAL
    } else {
        code
    }
}

const CONDITIONAL_NOTE: &str = "conditional: the curve roster is not known to be complete";

pub fn slope(opts: &Opts, surface: &str, l: &str, d: &str, c: &str) -> Result<u8> {
    let f = load(surface)?;
    let s = &f.model;
    let l = resolve_class(&f, l)?;
    let d = resolve_class(&f, d)?;
    let c = rational(c)?;
    let amp = s.is_ample(&l)?;
    if !amp.passes() {
        let nef = s.is_nef(&l)?;
        if !(nef.passes() && s.square(&l)?.is_positive()) {
            return Err(slopestab::Error::InvalidPolarisation(format!("{} is not ample", cls(&f, &l))).into());
        }
        eprintln!("warning: {} is nef but not ample; the roster Seshadri constant is not computed", cls(&f, &l));
    }
    let mu_x = mu_surface(s, &l)?;
    let mu_c = mu_divisor(s, &l, &d, &c)?;
    let eps_pseudo = pseudo_epsilon(s, &l, &d)?;
    let eps = if amp.passes() { Some(seshadri_divisor(s, &l, &d)?) } else { None };
    let conditional = !s.curves_complete();
    if opts.json {
        print_json(&json!({
            "surface": s.name(),
            "L": cls(&f, &l),
            "D": cls(&f, &d),
            "c": q_json(&c),
            "mu_X": q_json(&mu_x),
            "mu_c": q_json(&mu_c),
            "mu_c_below_mu_X": mu_c < mu_x,
            "pseudo_epsilon": quad_json(&eps_pseudo),
            "epsilon": eps.as_ref().map(|e| json!({
                "value": quad_json(&e.value),
                "binding": e.binding,
                "conditional": e.conditional,
            })),
            "conditional": conditional,
        }));
    } else {
        println!("surface      {}", s.name());
        println!("L            {}", cls(&f, &l));
        println!("D            {}", cls(&f, &d));
        println!("c            {}", fmt_q(&c));
        println!("mu(X,L)      {}", fmt_q(&mu_x));
        println!("mu_c(O_D,L)  {}", fmt_q(&mu_c));
        println!("eps~(D,L)    {}  (~{:.6})", eps_pseudo, eps_pseudo.to_f64());
        match &eps {
            Some(e) => println!(
                "eps(D,L)     {}  (~{:.6}){}",
                e.value,
                e.value.to_f64(),
                e.binding.as_ref().map(|b| format!("  bound by {b}")).unwrap_or_default()
            ),
            None => println!("eps(D,L)     n/a"),
        }
        if conditional {
            println!("{CONDITIONAL_NOTE}");
        }
    }
    Ok(finish(opts, conditional, OK))
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    json!({
        "unstable": v.is_unstable(),
        "witness_c": v.witness_c.as_ref().map(q_json),
        "mu_at_witness": v.mu_at_witness.as_ref().map(q_json),
        "mu_X": q_json(&v.mu_x),
        "epsilon": quad_json(&v.epsilon_used),
        "epsilon_kind": format!("{:?}", v.epsilon_kind),
        "unstable_region": v.unstable_region.as_ref().map(|(a, b)| json!([quad_json(a), quad_json(b)])),
        "conditional": v.conditional,
    })
}

pub fn destab(opts: &Opts, surface: &str, l: &str, d: &str, mode: Mode) -> Result<u8> {
    let f = load(surface)?;
    let s = &f.model;
    let l = resolve_class(&f, l)?;
    let d = resolve_class(&f, d)?;
    let v = destabilizes(s, &l, &d, mode)?;
    if opts.json {
        let mut out = verdict_json(&v);
        out["surface"] = json!(s.name());
        out["L"] = json!(cls(&f, &l));
        out["D"] = json!(cls(&f, &d));
        out["mode"] = json!(format!("{mode:?}").to_lowercase());
        print_json(&out);
    } else {
        println!("{}", if v.is_unstable() { "unstable" } else { "stable" });
        println!("mode         {}", format!("{mode:?}").to_lowercase());
        println!("mu(X,L)      {}", fmt_q(&v.mu_x));
        println!("epsilon      {}  (~{:.6})", v.epsilon_used, v.epsilon_used.to_f64());
        if let (Some(c), Some(m)) = (&v.witness_c, &v.mu_at_witness) {
            println!("witness c    {}", fmt_q(c));
            println!("mu_c(O_D,L)  {}  (~{:.6})", fmt_q(m), to_f64(m));
        }
        if let Some((a, b)) = &v.unstable_region {
            println!("region       ({a}, {b})");
        }
        if v.conditional {
            println!("{CONDITIONAL_NOTE}");
        }
    }
    Ok(finish(opts, v.conditional, if v.is_unstable() { UNSTABLE } else { OK }))
}

pub fn search(
    opts: &Opts,
    surface: &str,
    l: &str,
    bound: u32,
    mode: Mode,
    generators: Option<&str>,
    cap: u64,
) -> Result<u8> {
    let f = load(surface)?;
    let s = &f.model;
    let l = resolve_class(&f, l)?;
    let gens = match generators {
        Some(list) => list
            .split(',')
            .map(|g| Ok(NamedClass::new(g.trim(), resolve_class(&f, g.trim())?)))
            .collect::<Result<Vec<_>>>()?,
        None => default_generators(s),
    };
    let r = search::search(s, &l, &gens, bound, mode, cap)?;
    if opts.json {
        print_json(&json!({
            "surface": s.name(),
            "L": cls(&f, &l),
            "generators": r.generators.iter().map(|g| json!({"label": g.label, "class": cls(&f, &g.cls)})).collect::<Vec<_>>(),
            "bound": bound,
            "candidates": r.candidates,
            "skipped": r.skipped,
            "conditional": r.conditional,
            "destabilisers": r.hits.iter().map(|h| {
                let mut v = verdict_json(&h.verdict);
                v["coefficients"] = json!(h.coefficients);
                v["class"] = json!(cls(&f, &h.class));
                v
            }).collect::<Vec<_>>(),
        }));
    } else {
        if r.conditional {
            println!("{CONDITIONAL_NOTE}");
        }
        let labels: Vec<&str> = r.generators.iter().map(|g| g.label.as_str()).collect();
        println!("generators   {}", labels.join(", "));
        for h in &r.hits {
            println!(
                "destabiliser {}  coefficients {:?}  witness c = {}",
                cls(&f, &h.class),
                h.coefficients,
                h.verdict.witness_c.as_ref().map(fmt_q).unwrap_or_default()
            );
        }
        if r.skipped > 0 {
            println!("{} candidates with L.D <= 0 skipped", r.skipped);
        }
        println!("{}", r.summary());
    }
    Ok(finish(opts, r.conditional, if r.hits.is_empty() { OK } else { UNSTABLE }))
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s: OsString = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Write(path.to_path_buf(), e))
}

#[allow(clippy::too_many_arguments)]
pub fn cone_scan(
    opts: &Opts,
    surface: &str,
    la: &str,
    lb: &str,
    grid: u32,
    divisors: &str,
    mode: Mode,
    out: &Path,
) -> Result<u8> {
    let f = load(surface)?;
    let la = resolve_class(&f, la)?;
    let lb = resolve_class(&f, lb)?;
    let divs = divisors
        .split(',')
        .map(|d| Ok(NamedClass::new(d.trim(), resolve_class(&f, d.trim())?)))
        .collect::<Result<Vec<_>>>()?;
    let r: ScanReport = scan::cone_scan(&f.model, &la, &lb, grid, &divs, mode)?;
    let (csv, svg) = (with_suffix(out, ".csv"), with_suffix(out, ".svg"));
    write_file(&csv, &r.to_csv())?;
    write_file(&svg, &r.to_svg())?;
    let unstable = r.cells.iter().filter(|c| c.verdict.is_unstable()).count();
    let conditional = !f.model.curves_complete();
    if opts.json {
        print_json(&json!({
            "surface": f.model.name(),
            "La": cls(&f, &la),
            "Lb": cls(&f, &lb),
            "grid": grid,
            "cells": r.cells.len(),
            "unstable": unstable,
            "conditional": conditional,
            "csv": csv.display().to_string(),
            "svg": svg.display().to_string(),
        }));
    } else {
        println!("{} of {} cells unstable", unstable, r.cells.len());
        println!("wrote {} and {}", csv.display(), svg.display());
        if conditional {
            println!("{CONDITIONAL_NOTE}");
        }
    }
    Ok(finish(opts, conditional, if unstable > 0 { UNSTABLE } else { OK }))
}

fn certificate_json(c: &Certificate) -> Value {
    let basis = c.surface.basis();
    json!({
        "surface": c.surface.name(),
        "H": write_class(basis, &c.h),
        "q": c.q.iter().map(q_json).collect::<Vec<_>>(),
        "L0": write_class(basis, &c.l0()),
        "epsilon_floor": q_json(&c.epsilon_floor),
        "c": q_json(&c.c),
        "s": q_json(&c.s),
        "L_s": write_class(basis, &c.l_s),
        "mu_X": q_json(&c.mu_x),
        "mu_D": q_json(&c.mu_d),
        "conditional": c.conditional,
    })
}

fn print_certificate(c: &Certificate) {
    let basis = c.surface.basis();
    println!("L0           {}", write_class(basis, &c.l0()));
    println!("q            {}", c.q.iter().map(fmt_q).collect::<Vec<_>>().join(", "));
    println!("eps floor    {}", fmt_q(&c.epsilon_floor));
    println!("c            {}", fmt_q(&c.c));
    println!("s            {}", fmt_q(&c.s));
    println!("L_s          {}", write_class(basis, &c.l_s));
    println!("mu(X,L_s)    {}", fmt_q(&c.mu_x));
    println!("mu_c(O_D)    {}", fmt_q(&c.mu_d));
    if c.conditional {
        println!("{CONDITIONAL_NOTE}");
    }
}

pub fn construct(opts: &Opts, surface: &str, d: &str, h: &str, out: &Path) -> Result<u8> {
    let f = load(surface)?;
    let cfg = resolve_config(&f, d)?;
    let h = resolve_class(&f, h)?;
    let cert = build_certificate(&f.model, &cfg, &h)?;
    write_file(out, &write_certificate(&cert))?;
    let verified = verify_certificate(&cert);
    if opts.json {
        let mut v = certificate_json(&cert);
        v["verified"] = json!(verified.is_ok());
        v["file"] = json!(out.display().to_string());
        print_json(&v);
    } else {
        print_certificate(&cert);
        println!("wrote {}", out.display());
    }
    match verified {
        Ok(()) => Ok(finish(opts, cert.conditional, OK)),
        Err(v) => {
            eprintln!("certificate fails verification: {v}");
            Ok(FAILED)
        }
    }
}

pub fn verify(opts: &Opts, path: &Path) -> Result<u8> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))?;
    let cert = parse_certificate(&text)?;
    let verdict = verify_certificate(&cert);
    if opts.json {
        let mut v = certificate_json(&cert);
        v["verified"] = json!(verdict.is_ok());
        v["violation"] = json!(verdict.as_ref().err().map(|e| e.to_string()));
        print_json(&v);
    } else {
        match &verdict {
            Ok(()) => println!("certificate verifies"),
            Err(v) => println!("certificate rejected: {v}"),
        }
        if cert.conditional {
            println!("{CONDITIONAL_NOTE}");
        }
    }
    Ok(match verdict {
        Ok(()) => finish(opts, cert.conditional, OK),
        Err(_) => FAILED,
    })
}

pub fn verify_suite(opts: &Opts, only: Option<&str>, seed: u64) -> Result<u8> {
    let only = match only {
        Some(sel) => Some(suite::lookup(sel).ok_or_else(|| {
            slopestab::Error::Invalid(format!("no suite row {sel:?}; rows are 1-13 or their ids"))
        })?),
        None => None,
    };
    let rows = suite::run_suite(only, seed);
    if opts.json {
        print_json(&json!(rows
            .iter()
            .map(|r| json!({"number": r.number, "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail}))
            .collect::<Vec<_>>()));
    } else {
        for r in &rows {
            println!("{}", r.line());
        }
    }
    Ok(if rows.iter().all(|r| r.passed) { OK } else { FAILED })
}

pub fn catalog_list(opts: &Opts) -> Result<u8> {
    let mut rows = Vec::new();
    for key in catalog::keys() {
        let e = catalog::get(&key)?;
        rows.push((key, e.model.rank(), e.model.curves_complete(), e.notes));
    }
    if opts.json {
        print_json(&json!(rows
            .iter()
            .map(|(k, r, c, n)| json!({"key": k, "rank": r, "curves_complete": c, "notes": n}))
            .collect::<Vec<_>>()));
    } else {
        for (k, r, c, n) in rows {
            println!("{k:<24} rank {r:<3} {}  {n}", if c { "complete  " } else { "incomplete" });
        }
        println!("families: hirzebruch(n), product(g,d), product(g,h,d), verygen-product(g1,g2), blownup-quartic(17..19)");
    }
    Ok(OK)
}

pub fn catalog_export(key: &str, out: Option<&Path>) -> Result<u8> {
    let f: SurfaceFile = catalog::get(key)?.into();
    let text = write_surface(&f);
    match out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(OK)
}
