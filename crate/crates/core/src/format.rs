//! Text formats: the command-line class and configuration syntax, and the
//! TOML surface and certificate documents.
//!
//! Classes are written as signed rational combinations of basis labels,
//! `3H-E`, `1/2A+C`, `2*E1`; `K` names the canonical class unless it is a
//! basis label. Configurations list roster curves separated by commas, each
//! with an optional multiplicity: `2*D1,D2,D3,D4`.

use std::fmt::Write as _;
use std::ops::Range;

use num_traits::Zero;
use serde::Deserialize;
use toml::Spanned;

use crate::catalog::CatalogEntry;
use crate::constructor::Certificate;
use crate::error::{Error, Result};
use crate::exceptional::{Component, EffConfig};
use crate::lattice::{is_valid_label, ClassDisplay, CurveRecord, DivClass, ModelParts, NamedClass, SurfaceModel};
use crate::rational::{fmt_q, parse_rational, Q};

fn syntax(token: &str, msg: impl Into<String>) -> Error {
    Error::ClassSyntax { token: token.to_string(), msg: msg.into() }
}

/// Parses class syntax over `basis`; `K` resolves to `canonical` when given.
pub fn parse_class_in(basis: &[String], canonical: Option<&DivClass>, text: &str) -> Result<DivClass> {
    let text = text.trim();
    if text.is_empty() {
        return Err(syntax(text, "empty class"));
    }
    if text == "0" {
        return Ok(DivClass::zero(basis.len()));
    }
    let mut acc = DivClass::zero(basis.len());
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        let mut sign = Q::from_integer(1.into());
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if start != 0 {
            return Err(syntax(&text[start..], "expected '+' or '-'"));
        }
        let coef_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coef_text = &text[coef_start..pos];
        let mut starred = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            starred = true;
            pos += 1;
        }
        let label_start = pos;
        if pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
            pos += 1;
            while pos < bytes.len()
                && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_' || bytes[pos] == b'\'')
            {
                pos += 1;
            }
        }
        let token = &text[start..pos.max(start + 1).min(text.len())];
        let label = &text[label_start..pos];
        if label.is_empty() {
            let rest_end = text[start + 1..].find(['+', '-']).map_or(text.len(), |i| i + start + 1);
            return Err(syntax(&text[start..rest_end], "expected a basis label"));
        }
        if starred && coef_text.is_empty() {
            return Err(syntax(token, "'*' needs a coefficient"));
        }
        let coef = if coef_text.is_empty() {
            Q::from_integer(1.into())
        } else {
            parse_rational(coef_text).ok_or_else(|| syntax(token, "bad coefficient"))?
        };
        let k = sign * coef;
        if let Some(i) = basis.iter().position(|b| b == label) {
            acc = acc.add_scaled(&k, &DivClass::basis_vector(basis.len(), i));
        } else if let (Some(kc), "K") = (canonical, label) {
            acc = acc.add_scaled(&k, kc);
        } else {
            return Err(syntax(token, format!("unknown label {label:?}")));
        }
    }
    Ok(acc)
}

pub fn parse_class(s: &SurfaceModel, text: &str) -> Result<DivClass> {
    parse_class_in(s.basis(), Some(s.canonical()), text)
}

/// Canonical text of a class, e.g. `3H-E`, `1/2A+C`, `0`.
pub fn write_class(basis: &[String], cls: &DivClass) -> String {
    ClassDisplay { basis, cls }.to_string()
}

/// `2*D1,D2` over roster labels.
pub fn parse_config(s: &SurfaceModel, text: &str) -> Result<EffConfig> {
    let mut comps: Vec<Component> = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let (mult, label) = match item.split_once('*') {
            Some((m, l)) => (m.parse::<u64>().map_err(|_| syntax(item, "bad multiplicity"))?, l),
            None => (1, item),
        };
        if mult == 0 {
            return Err(syntax(item, "multiplicity must be positive"));
        }
        let curve = s.curve(label).ok_or_else(|| syntax(item, format!("unknown roster curve {label:?}")))?;
        match comps.iter_mut().find(|c| c.label == label) {
            Some(c) => c.multiplicity += mult,
            None => comps.push(Component { label: label.to_string(), cls: curve.cls.clone(), multiplicity: mult }),
        }
    }
    EffConfig::new(comps)
}

pub fn write_config(cfg: &EffConfig) -> String {
    cfg.components()
        .iter()
        .map(|c| if c.multiplicity == 1 { c.label.clone() } else { format!("{}*{}", c.multiplicity, c.label) })
        .collect::<Vec<_>>()
        .join(",")
}

/// A surface model with optional featured classes, as stored on disk.
#[derive(Clone, Debug)]
pub struct SurfaceFile {
    pub model: SurfaceModel,
    pub notes: Option<String>,
    pub featured_polarisations: Vec<NamedClass>,
    pub featured_divisors: Vec<NamedClass>,
    pub featured_boundary: Vec<NamedClass>,
    pub featured_configs: Vec<(String, EffConfig)>,
}

impl From<CatalogEntry> for SurfaceFile {
    fn from(e: CatalogEntry) -> Self {
        SurfaceFile {
            model: e.model,
            notes: Some(e.notes),
            featured_polarisations: e.featured_polarisations,
            featured_divisors: e.featured_divisors,
            featured_boundary: e.featured_boundary,
            featured_configs: e.featured_configs,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    name: String,
    notes: Option<String>,
    basis: Vec<Spanned<String>>,
    gram: Vec<Spanned<Vec<Spanned<String>>>>,
    canonical: Spanned<String>,
    curves_complete: bool,
    kodaira_nonneg: bool,
    reference_positive_class: Option<Spanned<String>>,
    #[serde(default)]
    curves: Vec<RawCurve>,
    #[serde(default)]
    effective_generators: Vec<RawNamed>,
    #[serde(default)]
    featured_polarisations: Vec<RawNamed>,
    #[serde(default)]
    featured_divisors: Vec<RawNamed>,
    #[serde(default)]
    featured_boundary: Vec<RawNamed>,
    #[serde(default)]
    featured_configs: Vec<RawConfig>,
    certificate: Option<RawCertificate>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    label: String,
    class: Spanned<String>,
    genus: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNamed {
    label: String,
    class: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    label: String,
    components: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    label: String,
    class: Spanned<String>,
    multiplicity: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCertificate {
    #[serde(rename = "H")]
    h: Spanned<String>,
    q: Vec<Spanned<String>>,
    epsilon_floor: Spanned<String>,
    c: Spanned<String>,
    s: Spanned<String>,
    #[serde(rename = "L_s")]
    l_s: Spanned<String>,
    #[serde(rename = "mu_X")]
    mu_x: Spanned<String>,
    #[serde(rename = "mu_D")]
    mu_d: Spanned<String>,
    conditional: bool,
    components: Vec<RawComponent>,
}

struct Source<'a>(&'a str);

impl Source<'_> {
    fn at(&self, span: Range<usize>, msg: impl Into<String>) -> Error {
        let before = &self.0[..span.start.min(self.0.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        Error::Parse { line, col, msg: msg.into() }
    }

    fn rational(&self, v: &Spanned<String>) -> Result<Q> {
        parse_rational(v.get_ref()).ok_or_else(|| self.at(v.span(), format!("bad rational {:?}", v.get_ref())))
    }

    fn class(&self, basis: &[String], canonical: Option<&DivClass>, v: &Spanned<String>) -> Result<DivClass> {
        parse_class_in(basis, canonical, v.get_ref()).map_err(|e| self.at(v.span(), e.to_string()))
    }
}

fn parse_doc(text: &str) -> Result<(SurfaceFile, Option<RawCertificate>, Source<'_>)> {
    let src = Source(text);
    let raw: RawDoc = toml::from_str(text).map_err(|e| match e.span() {
        Some(span) => src.at(span, e.message().to_string()),
        None => Error::Parse { line: 0, col: 0, msg: e.message().to_string() },
    })?;
    let basis: Vec<String> = raw.basis.iter().map(|b| b.get_ref().clone()).collect();
    for b in &raw.basis {
        if !is_valid_label(b.get_ref()) {
            return Err(src.at(b.span(), format!("invalid basis label {:?}", b.get_ref())));
        }
    }
    let mut gram: Vec<Vec<Q>> = Vec::with_capacity(raw.gram.len());
    for row in &raw.gram {
        if row.get_ref().len() != basis.len() {
            return Err(src.at(row.span(), format!("gram row has {} entries, expected {}", row.get_ref().len(), basis.len())));
        }
        gram.push(row.get_ref().iter().map(|x| src.rational(x)).collect::<Result<_>>()?);
    }
    if gram.len() != basis.len() {
        return Err(Error::Parse { line: 0, col: 0, msg: format!("gram has {} rows, expected {}", gram.len(), basis.len()) });
    }
    for i in 0..gram.len() {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                let cell = &raw.gram[i].get_ref()[j];
                return Err(src.at(
                    cell.span(),
                    format!("gram is not symmetric: entry ({},{}) = {} but ({},{}) = {}", i + 1, j + 1, fmt_q(&gram[i][j]), j + 1, i + 1, fmt_q(&gram[j][i])),
                ));
            }
        }
    }
    let canonical = src.class(&basis, None, &raw.canonical)?;
    let cls = |v: &Spanned<String>| src.class(&basis, Some(&canonical), v);
    let curves = raw
        .curves
        .iter()
        .map(|c| Ok(CurveRecord { label: c.label.clone(), cls: cls(&c.class)?, genus: c.genus }))
        .collect::<Result<Vec<_>>>()?;
    let named = |xs: &[RawNamed]| -> Result<Vec<NamedClass>> {
        xs.iter().map(|x| Ok(NamedClass::new(x.label.clone(), cls(&x.class)?))).collect()
    };
    let model = SurfaceModel::new(ModelParts {
        name: raw.name.clone(),
        basis: basis.clone(),
        gram,
        canonical: canonical.clone(),
        curves,
        curves_complete: raw.curves_complete,
        kodaira_nonneg: raw.kodaira_nonneg,
        reference_positive_class: raw.reference_positive_class.as_ref().map(cls).transpose()?,
        effective_generators: named(&raw.effective_generators)?,
    })?;
    let featured_configs = raw
        .featured_configs
        .iter()
        .map(|c| {
            let cfg = parse_config(&model, c.components.get_ref()).map_err(|e| src.at(c.components.span(), e.to_string()))?;
            Ok((c.label.clone(), cfg))
        })
        .collect::<Result<Vec<_>>>()?;
    let file = SurfaceFile {
        notes: raw.notes,
        featured_polarisations: named(&raw.featured_polarisations)?,
        featured_divisors: named(&raw.featured_divisors)?,
        featured_boundary: named(&raw.featured_boundary)?,
        featured_configs,
        model,
    };
    Ok((file, raw.certificate, src))
}

pub fn parse_surface(text: &str) -> Result<SurfaceFile> {
    Ok(parse_doc(text)?.0)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn write_bool(out: &mut String, key: &str, v: bool) {
    let _ = writeln!(out, "{key} = {v}");
}

fn write_named(out: &mut String, table: &str, basis: &[String], xs: &[NamedClass]) {
    for x in xs {
        let _ = writeln!(out, "\n[[{table}]]\nlabel = {}\nclass = {}", quote(&x.label), quote(&write_class(basis, &x.cls)));
    }
}

/// Byte-stable canonical text of a surface file.
pub fn write_surface(f: &SurfaceFile) -> String {
    let m = &f.model;
    let basis = m.basis();
    let mut out = String::new();
    let _ = writeln!(out, "name = {}", quote(m.name()));
    if let Some(n) = &f.notes {
        let _ = writeln!(out, "notes = {}", quote(n));
    }
    let _ = writeln!(out, "basis = [{}]", basis.iter().map(|b| quote(b)).collect::<Vec<_>>().join(", "));
    out.push_str("gram = [\n");
    for row in m.gram() {
        let _ = writeln!(out, "  [{}],", row.iter().map(|x| quote(&fmt_q(x))).collect::<Vec<_>>().join(", "));
    }
    out.push_str("]\n");
    let _ = writeln!(out, "canonical = {}", quote(&write_class(basis, m.canonical())));
    write_bool(&mut out, "curves_complete", m.curves_complete());
    write_bool(&mut out, "kodaira_nonneg", m.kodaira_nonneg());
    if let Some(r) = m.reference_positive_class() {
        let _ = writeln!(out, "reference_positive_class = {}", quote(&write_class(basis, r)));
    }
    for c in m.curves() {
        let _ = write!(out, "\n[[curves]]\nlabel = {}\nclass = {}\n", quote(&c.label), quote(&write_class(basis, &c.cls)));
        if let Some(g) = c.genus {
            let _ = writeln!(out, "genus = {g}");
        }
    }
    write_named(&mut out, "effective_generators", basis, m.effective_generators());
    write_named(&mut out, "featured_polarisations", basis, &f.featured_polarisations);
    write_named(&mut out, "featured_divisors", basis, &f.featured_divisors);
    write_named(&mut out, "featured_boundary", basis, &f.featured_boundary);
    for (label, cfg) in &f.featured_configs {
        let _ = writeln!(out, "\n[[featured_configs]]\nlabel = {}\ncomponents = {}", quote(label), quote(&write_config(cfg)));
    }
    out
}

pub fn write_certificate(cert: &Certificate) -> String {
    let file = SurfaceFile {
        model: cert.surface.clone(),
        notes: None,
        featured_polarisations: vec![],
        featured_divisors: vec![],
        featured_boundary: vec![],
        featured_configs: vec![],
    };
    let basis = cert.surface.basis();
    let r = |x: &Q| quote(&fmt_q(x));
    let mut out = write_surface(&file);
    out.push_str("\n[certificate]\n");
    let _ = writeln!(out, "H = {}", quote(&write_class(basis, &cert.h)));
    let _ = writeln!(out, "q = [{}]", cert.q.iter().map(r).collect::<Vec<_>>().join(", "));
    let _ = writeln!(out, "epsilon_floor = {}", r(&cert.epsilon_floor));
    let _ = writeln!(out, "c = {}", r(&cert.c));
    let _ = writeln!(out, "s = {}", r(&cert.s));
    let _ = writeln!(out, "L_s = {}", quote(&write_class(basis, &cert.l_s)));
    let _ = writeln!(out, "mu_X = {}", r(&cert.mu_x));
    let _ = writeln!(out, "mu_D = {}", r(&cert.mu_d));
    write_bool(&mut out, "conditional", cert.conditional);
    for c in cert.divisor.components() {
        let _ = writeln!(
            out,
            "\n[[certificate.components]]\nlabel = {}\nclass = {}\nmultiplicity = {}",
            quote(&c.label),
            quote(&write_class(basis, &c.cls)),
            c.multiplicity
        );
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let (file, raw, src) = parse_doc(text)?;
    let raw = raw.ok_or_else(|| Error::Parse { line: 0, col: 0, msg: "missing [certificate] table".into() })?;
    let m = file.model;
    let basis = m.basis().to_vec();
    let cls = |v: &Spanned<String>| src.class(&basis, Some(m.canonical()), v);
    let comps = raw
        .components
        .iter()
        .map(|c| Ok(Component { label: c.label.clone(), cls: cls(&c.class)?, multiplicity: c.multiplicity }))
        .collect::<Result<Vec<_>>>()?;
    let divisor = EffConfig::new(comps)?;
    let cert = Certificate {
        h: cls(&raw.h)?,
        q: raw.q.iter().map(|x| src.rational(x)).collect::<Result<_>>()?,
        epsilon_floor: src.rational(&raw.epsilon_floor)?,
        c: src.rational(&raw.c)?,
        s: src.rational(&raw.s)?,
        l_s: cls(&raw.l_s)?,
        mu_x: src.rational(&raw.mu_x)?,
        mu_d: src.rational(&raw.mu_d)?,
        conditional: raw.conditional,
        divisor,
        surface: m,
    };
    Ok(cert)
}

/// `true` if no coefficient is nonzero outside the listed positions.
pub fn is_supported_on(cls: &DivClass, idx: &[usize]) -> bool {
    cls.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || idx.contains(&i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{q, qi};

    #[test]
    fn class_syntax() {
        let s = catalog::get("dp1").unwrap().model;
        assert_eq!(parse_class(&s, "3H-E").unwrap(), DivClass::from_ints(&[3, -1]));
        assert_eq!(parse_class(&s, "-K").unwrap(), DivClass::from_ints(&[3, -1]));
        assert_eq!(parse_class(&s, "1/2H+2*E").unwrap(), DivClass::new(vec![q(1, 2), qi(2)]));
        assert_eq!(parse_class(&s, "0").unwrap(), DivClass::zero(2));
        for bad in ["3H-X", "3H--E", "", "3", "H E", "1/0H"] {
            let err = parse_class(&s, bad).unwrap_err();
            assert!(matches!(err, Error::ClassSyntax { .. }), "{bad}: {err:?}");
        }
        match parse_class(&s, "3H-2X") {
            Err(Error::ClassSyntax { token, .. }) => assert_eq!(token, "-2X"),
            other => panic!("{other:?}"),
        }
        assert_eq!(write_class(s.basis(), &DivClass::new(vec![q(1, 2), qi(-1)])), "1/2H-E");
    }

    #[test]
    fn config_syntax() {
        let s = catalog::get("d4-config").unwrap().model;
        let c = parse_config(&s, "2*D1,D2,D3,D4").unwrap();
        assert_eq!(c.multiplicities(), vec![2, 1, 1, 1]);
        assert_eq!(write_config(&c), "2*D1,D2,D3,D4");
        assert!(parse_config(&s, "D9").is_err());
        assert!(parse_config(&s, "0*D1").is_err());
    }

    #[test]
    fn surface_round_trip() {
        for key in catalog::keys() {
            let f: SurfaceFile = catalog::get(&key).unwrap().into();
            let text = write_surface(&f);
            let back = parse_surface(&text).unwrap();
            assert_eq!(back.model, f.model, "{key}");
            assert_eq!(write_surface(&back), text, "{key}");
        }
    }

    #[test]
    fn asymmetric_gram_is_located() {
        let f: SurfaceFile = catalog::get("dp1").unwrap().into();
        let text = write_surface(&f).replacen("[\"1\", \"0\"]", "[\"1\", \"2\"]", 1);
        match parse_surface(&text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!(line, 6);
                assert_eq!(col, 4);
                assert!(msg.contains("not symmetric"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }
}
