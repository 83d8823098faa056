//! Built-in surface models.
//!
//! Where a model relies on geometry the numbers cannot certify (general
//! position of blown-up points, very general moduli) the roster is marked
//! incomplete and the notes say what is being assumed.

use crate::error::{Error, Result};
use crate::exceptional::{Component, EffConfig};
use crate::lattice::{solve, CurveRecord, DivClass, ModelParts, NamedClass, SurfaceModel};
use crate::rational::{common_denominator, qi, Q};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub model: SurfaceModel,
    pub notes: String,
    pub featured_divisors: Vec<NamedClass>,
    pub featured_configs: Vec<(String, EffConfig)>,
    pub featured_polarisations: Vec<NamedClass>,
    /// Nef classes of positive square on the boundary of the ample cone.
    pub featured_boundary: Vec<NamedClass>,
}

impl CatalogEntry {
    fn new(key: String, model: SurfaceModel, notes: &str) -> Self {
        CatalogEntry {
            key,
            model,
            notes: notes.to_string(),
            featured_divisors: Vec::new(),
            featured_configs: Vec::new(),
            featured_polarisations: Vec::new(),
            featured_boundary: Vec::new(),
        }
    }

    fn divisor(mut self, label: &str, cls: DivClass) -> Self {
        self.featured_divisors.push(NamedClass::new(label, cls));
        self
    }

    fn polarisation(mut self, label: &str, cls: DivClass) -> Self {
        self.featured_polarisations.push(NamedClass::new(label, cls));
        self
    }

    fn config(mut self, label: &str, curves: &[&str]) -> Self {
        let comps = curves
            .iter()
            .map(|c| Component {
                label: c.to_string(),
                cls: self.model.curve(c).expect("roster curve").cls.clone(),
                multiplicity: 1,
            })
            .collect();
        self.featured_configs.push((label.to_string(), EffConfig::new(comps).expect("distinct curves")));
        self
    }

    pub fn polarisation_named(&self, label: &str) -> Option<&DivClass> {
        self.featured_polarisations.iter().find(|p| p.label == label).map(|p| &p.cls)
    }

    pub fn config_named(&self, label: &str) -> Option<&EffConfig> {
        self.featured_configs.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }
}

/// Keys of one representative of every family, in a fixed order.
pub fn keys() -> Vec<String> {
    [
        "p2",
        "dp1",
        "dp2",
        "hirzebruch(0)",
        "hirzebruch(1)",
        "hirzebruch(2)",
        "hirzebruch(3)",
        "k3-shell",
        "product(2,10)",
        "product(3,5)",
        "verygen-product(2,2)",
        "verygen-product(2,3)",
        "blownup-quartic(17)",
        "synthetic-highgenus",
        "d4-config",
        "a2-config",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn get(key: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogKey(key.to_string());
    let (name, args) = split_key(key).ok_or_else(unknown)?;
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(unknown()) };
    match name {
        "p2" => arity(0).and_then(|_| p2(key)),
        "dp1" => arity(0).and_then(|_| dp1(key)),
        "dp2" => arity(0).and_then(|_| dp2(key)),
        "hirzebruch" => arity(1).and_then(|_| hirzebruch(key, args[0])),
        "k3-shell" => arity(0).and_then(|_| k3_shell(key)),
        "product" => match args.len() {
            2 => product(key, args[0], args[1]),
            3 => {
                let (g, h, d) = (args[0], args[1], args[2]);
                if h != (g - 1) * d + 1 {
                    return Err(Error::Invalid(format!("product({g},{h},{d}): h must be (g-1)d+1")));
                }
                product(key, g, d)
            }
            _ => Err(unknown()),
        },
        "verygen-product" => arity(2).and_then(|_| verygen_product(key, args[0], args[1])),
        "blownup-quartic" => arity(1).and_then(|_| blownup_quartic(key, args[0])),
        "synthetic-highgenus" => arity(0).and_then(|_| synthetic(key)),
        "d4-config" => arity(0).and_then(|_| {
            cartan(key, "D4", &[&[2, -1, -1, -1], &[-1, 2, 0, 0], &[-1, 0, 2, 0], &[-1, 0, 0, 2]])
        }),
        "a2-config" => arity(0).and_then(|_| cartan(key, "A2", &[&[2, -1], &[-1, 2]])),
        _ => Err(unknown()),
    }
}

fn split_key(key: &str) -> Option<(&str, Vec<i64>)> {
    match key.split_once('(') {
        None => Some((key, Vec::new())),
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')')?;
            let args = inner.split(',').map(|a| a.trim().parse().ok()).collect::<Option<Vec<i64>>>()?;
            Some((name, args))
        }
    }
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
}

fn curve(label: &str, coeffs: &[i64], genus: u64) -> CurveRecord {
    CurveRecord { label: label.into(), cls: DivClass::from_ints(coeffs), genus: Some(genus) }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn p2(key: &str) -> Result<CatalogEntry> {
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["H"]),
        gram: ints(&[&[1]]),
        canonical: DivClass::from_ints(&[-3]),
        curves: vec![curve("H", &[1], 0)],
        curves_complete: true,
        kodaira_nonneg: false,
        reference_positive_class: Some(DivClass::from_ints(&[1])),
        effective_generators: vec![],
    })?;
    Ok(CatalogEntry::new(key.into(), m, "projective plane; H a line")
        .polarisation("H", DivClass::from_ints(&[1]))
        .divisor("H", DivClass::from_ints(&[1])))
}

/// `P^2` blown up at `n` points: basis `H, E1..En`, diagonal form.
fn blowup_parts(key: &str, basis: Vec<String>, curves: Vec<CurveRecord>, complete: bool) -> ModelParts {
    let rank = basis.len();
    let gram = (0..rank)
        .map(|i| (0..rank).map(|j| qi(if i != j { 0 } else if i == 0 { 1 } else { -1 })).collect())
        .collect();
    let mut k = vec![1i64; rank];
    k[0] = -3;
    ModelParts {
        name: key.into(),
        basis,
        gram,
        canonical: DivClass::from_ints(&k),
        curves,
        curves_complete: complete,
        kodaira_nonneg: false,
        reference_positive_class: Some(DivClass::basis_vector(rank, 0)),
        effective_generators: vec![],
    }
}

fn dp1(key: &str) -> Result<CatalogEntry> {
    let m = SurfaceModel::new(blowup_parts(
        key,
        labels(&["H", "E"]),
        vec![curve("E", &[0, 1], 0), curve("H-E", &[1, -1], 0)],
        true,
    ))?;
    Ok(CatalogEntry::new(key.into(), m, "plane blown up at one point; the cone of curves is spanned by E and H-E")
        .polarisation("3H-E", DivClass::from_ints(&[3, -1]))
        .polarisation("2H-E", DivClass::from_ints(&[2, -1]))
        .divisor("E", DivClass::from_ints(&[0, 1]))
        .divisor("H-E", DivClass::from_ints(&[1, -1]))
        .divisor("H", DivClass::from_ints(&[1, 0]))
        .config("E", &["E"]))
}

fn dp2(key: &str) -> Result<CatalogEntry> {
    let curves = vec![curve("E1", &[0, 1, 0], 0), curve("E2", &[0, 0, 1], 0), curve("H-E1-E2", &[1, -1, -1], 0)];
    let mut parts = blowup_parts(key, labels(&["H", "E1", "E2"]), curves.clone(), true);
    parts.effective_generators = curves.iter().map(|c| NamedClass::new(c.label.clone(), c.cls.clone())).collect();
    let m = SurfaceModel::new(parts)?;
    Ok(CatalogEntry::new(
        key.into(),
        m,
        "plane blown up at two points; E1, E2 and the line through the points span the cone of curves",
    )
    .polarisation("-K", DivClass::from_ints(&[3, -1, -1]))
    .divisor("H", DivClass::from_ints(&[1, 0, 0]))
    .config("E1", &["E1"]))
}

fn hirzebruch(key: &str, n: i64) -> Result<CatalogEntry> {
    if n < 0 {
        return Err(Error::Invalid("hirzebruch(n) needs n >= 0".into()));
    }
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["F", "S"]),
        gram: ints(&[&[0, 1], &[1, -n]]),
        canonical: DivClass::from_ints(&[-(n + 2), -2]),
        curves: vec![curve("F", &[1, 0], 0), curve("S", &[0, 1], 0)],
        curves_complete: true,
        kodaira_nonneg: false,
        reference_positive_class: Some(DivClass::from_ints(&[n + 1, 1])),
        effective_generators: vec![],
    })?;
    Ok(CatalogEntry::new(key.into(), m, "ruled surface over P^1; F a fibre, S the section of square -n")
        .polarisation("S+(n+1)F", DivClass::from_ints(&[n + 1, 1]))
        .divisor("F", DivClass::from_ints(&[1, 0]))
        .divisor("S", DivClass::from_ints(&[0, 1])))
}

fn k3_shell(key: &str) -> Result<CatalogEntry> {
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["R1", "R2"]),
        gram: ints(&[&[-2, 3], &[3, -2]]),
        canonical: DivClass::from_ints(&[0, 0]),
        curves: vec![curve("R1", &[1, 0], 0)],
        curves_complete: false,
        kodaira_nonneg: true,
        reference_positive_class: Some(DivClass::from_ints(&[1, 1])),
        effective_generators: vec![],
    })?;
    Ok(CatalogEntry::new(
        key.into(),
        m,
        "even rank-2 lattice of signature (1,1) with K = 0; assumes R1 is a smooth rational curve. The specific lattice is a choice",
    )
    .polarisation("R1+R2", DivClass::from_ints(&[1, 1]))
    .divisor("R1", DivClass::from_ints(&[1, 0]))
    .divisor("R1+R2", DivClass::from_ints(&[1, 1])))
}

fn product(key: &str, g: i64, d: i64) -> Result<CatalogEntry> {
    if g < 1 || d < 1 {
        return Err(Error::Invalid("product(g,d) needs g >= 1 and d >= 1".into()));
    }
    let h = (g - 1) * d + 1;
    let e2 = d * (2 - 2 * g);
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["Fg", "Fh", "E"]),
        gram: ints(&[&[0, 1, 1], &[1, 0, d], &[1, d, e2]]),
        canonical: DivClass::from_ints(&[(2 * g - 2) * d, 2 * g - 2, 0]),
        curves: vec![
            curve("Fg", &[1, 0, 0], g as u64),
            curve("Fh", &[0, 1, 0], h as u64),
            curve("E", &[0, 0, 1], h as u64),
        ],
        curves_complete: false,
        kodaira_nonneg: true,
        reference_positive_class: Some(DivClass::from_ints(&[1, 1, 0])),
        effective_generators: vec![],
    })?;
    let l = DivClass::from_ints(&[(2 * g - 2) * d, 0, 1]);
    let mut e = CatalogEntry::new(
        key.into(),
        m,
        &format!(
            "C_g x C_h with an unramified degree-{d} cover C_h -> C_g (h = {h}); E is its graph. The roster is not the full cone of curves"
        ),
    )
    .polarisation("L+Fh", &l + &DivClass::from_ints(&[0, 1, 0]))
    .divisor("Fg+E", DivClass::from_ints(&[1, 0, 1]));
    e.featured_boundary.push(NamedClass::new("L", l));
    Ok(e)
}

fn verygen_product(key: &str, g1: i64, g2: i64) -> Result<CatalogEntry> {
    if g1 < 1 || g2 < 1 {
        return Err(Error::Invalid("verygen-product needs genera >= 1".into()));
    }
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["F1", "F2"]),
        gram: ints(&[&[0, 1], &[1, 0]]),
        canonical: DivClass::from_ints(&[2 * g2 - 2, 2 * g1 - 2]),
        curves: vec![curve("F1", &[1, 0], g1 as u64), curve("F2", &[0, 1], g2 as u64)],
        curves_complete: true,
        kodaira_nonneg: true,
        reference_positive_class: Some(DivClass::from_ints(&[1, 1])),
        effective_generators: vec![],
    })?;
    let mut e = CatalogEntry::new(
        key.into(),
        m,
        "product of very general curves; assumes the Neron-Severi group has rank 2 so the fibres span the cone of curves",
    )
    .polarisation("F1+F2", DivClass::from_ints(&[1, 1]));
    if g1 >= 2 && g2 >= 2 {
        e = e.polarisation("K", DivClass::from_ints(&[2 * g2 - 2, 2 * g1 - 2]));
    }
    Ok(e)
}

fn blownup_quartic(key: &str, k: i64) -> Result<CatalogEntry> {
    if !(17..=19).contains(&k) {
        return Err(Error::Invalid("blownup-quartic(k) needs 17 <= k <= 19".into()));
    }
    let k = k as usize;
    let rank = k + 1;
    let mut basis = vec!["H".to_string()];
    basis.extend((1..=k).map(|i| format!("E{i}")));
    let mut c = vec![-1i64; rank];
    c[0] = 4;
    let mut curves = vec![curve("C", &c, 3)];
    curves.extend((1..=k).map(|i| CurveRecord {
        label: format!("E{i}"),
        cls: DivClass::basis_vector(rank, i),
        genus: Some(0),
    }));
    let m = SurfaceModel::new(blowup_parts(key, basis, curves, false))?;
    let mut amp = vec![-1i64; rank];
    amp[0] = 5;
    Ok(CatalogEntry::new(
        key.into(),
        m,
        "plane blown up at k general points of a smooth quartic; C is the strict transform. Ampleness of 5H - sum E_i is asserted, not derived",
    )
    .polarisation("5H-E", DivClass::from_ints(&amp))
    .config("C", &["C"]))
}

fn synthetic(key: &str) -> Result<CatalogEntry> {
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis: labels(&["A", "C"]),
        gram: ints(&[&[1, 1], &[1, -1]]),
        canonical: DivClass::from_ints(&[3, 0]),
        curves: vec![curve("C", &[0, 1], 2)],
        curves_complete: false,
        kodaira_nonneg: true,
        reference_positive_class: Some(DivClass::from_ints(&[1, 0])),
        effective_generators: vec![],
    })?;
    Ok(CatalogEntry::new(key.into(), m, "numerical model only: C has square -1 and genus 2 by adjunction")
        .polarisation("A", DivClass::from_ints(&[1, 0]))
        .divisor("C", DivClass::from_ints(&[0, 1]))
        .config("C", &["C"]))
}

/// `<2>` plus the negative of a Cartan matrix, with `K = 0`.
fn cartan(key: &str, label: &str, cartan: &[&[i64]]) -> Result<CatalogEntry> {
    let n = cartan.len() + 1;
    let mut gram = vec![vec![qi(0); n]; n];
    gram[0][0] = qi(2);
    for (i, row) in cartan.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            gram[i + 1][j + 1] = qi(-v);
        }
    }
    let basis: Vec<String> = std::iter::once("H".to_string()).chain((1..n).map(|i| format!("D{i}"))).collect();
    let curves: Vec<CurveRecord> = (1..n)
        .map(|i| CurveRecord { label: basis[i].clone(), cls: DivClass::basis_vector(n, i), genus: Some(0) })
        .collect();
    let names: Vec<String> = curves.iter().map(|c| c.label.clone()).collect();
    let m = SurfaceModel::new(ModelParts {
        name: key.into(),
        basis,
        gram,
        canonical: DivClass::zero(n),
        curves,
        curves_complete: false,
        kodaira_nonneg: true,
        reference_positive_class: Some(DivClass::basis_vector(n, 0)),
        effective_generators: vec![],
    })?;
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    // kH - Z with G Z = -1 (denominators cleared) pairs positively with
    // every D_i; k is the least integer giving positive square
    let g: Vec<Vec<Q>> = (1..n).map(|i| m.gram()[i][1..].to_vec()).collect();
    let z = solve(&g, &vec![qi(-1); n - 1]).expect("negative definite");
    let den = Q::from_integer(common_denominator(&z));
    let z: Vec<Q> = z.iter().map(|x| x * &den).collect();
    let z2: Q = z.iter().map(|x| -x).sum::<Q>() * &den;
    let mut k = 1i64;
    while qi(2 * k * k) + &z2 <= qi(0) {
        k += 1;
    }
    let pol = DivClass::new(std::iter::once(qi(k)).chain(z.iter().map(|x| -x)).collect());
    Ok(CatalogEntry::new(key.into(), m, &format!("{label} configuration of -2 curves beside a class of square 2; K = 0"))
        .polarisation("kH-Z", pol)
        .config(label, &names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{inertia, Positivity};

    #[test]
    fn every_entry_loads_with_ample_polarisations() {
        for key in keys() {
            let e = get(&key).unwrap();
            let (p, n, z) = inertia(e.model.gram());
            assert_eq!((p, n, z), (1, e.model.rank() - 1, 0), "{key}");
            for pol in &e.featured_polarisations {
                let v = e.model.is_ample(&pol.cls).unwrap();
                assert!(v.passes(), "{key}: {}", pol.label);
                if e.model.curves_complete() {
                    assert_eq!(v.status, Positivity::Yes);
                }
            }
        }
    }

    #[test]
    fn key_errors() {
        assert!(matches!(get("nope"), Err(Error::UnknownCatalogKey(_))));
        assert!(matches!(get("hirzebruch"), Err(Error::UnknownCatalogKey(_))));
        assert!(matches!(get("product(2,3,10)"), Err(Error::Invalid(_))));
        assert!(get("product(2,11,10)").is_ok());
        assert!(matches!(get("blownup-quartic(16)"), Err(Error::Invalid(_))));
    }
}
