//! Effective configurations of curves: negative definiteness, connectivity,
//! Laufer's numerical cycle and the rational / elliptic / higher genus split.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::{is_negative_definite, solve, DivClass, SurfaceModel};
use crate::rational::{common_denominator, qi, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub label: String,
    pub cls: DivClass,
    pub multiplicity: u64,
}

/// An effective divisor `sum d_i D_i` with distinct irreducible components.
#[derive(Clone, Debug, PartialEq)]
pub struct EffConfig {
    components: Vec<Component>,
}

impl EffConfig {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if c.multiplicity == 0 {
                return Err(Error::InvalidConfig(format!("component {} has multiplicity 0", c.label)));
            }
            if components[..i].iter().any(|o| o.cls == c.cls) {
                return Err(Error::InvalidConfig(format!("component {} is repeated", c.label)));
            }
        }
        Ok(EffConfig { components })
    }

    /// Every component with multiplicity one.
    pub fn reduced_of(parts: impl IntoIterator<Item = (String, DivClass)>) -> Result<Self> {
        Self::new(
            parts
                .into_iter()
                .map(|(label, cls)| Component { label, cls, multiplicity: 1 })
                .collect(),
        )
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.multiplicity).collect()
    }

    /// The same support with new multiplicities; zero entries drop out.
    pub fn with_multiplicities(&self, mult: &[u64]) -> EffConfig {
        EffConfig {
            components: self
                .components
                .iter()
                .zip(mult)
                .filter(|(_, &m)| m > 0)
                .map(|(c, &m)| Component { multiplicity: m, ..c.clone() })
                .collect(),
        }
    }

    /// `sum d_i D_i`.
    pub fn total(&self, s: &SurfaceModel) -> Result<DivClass> {
        let mut acc = DivClass::zero(s.rank());
        for c in &self.components {
            s.check_dim(&c.cls)?;
            acc = acc.add_scaled(&qi(c.multiplicity as i64), &c.cls);
        }
        Ok(acc)
    }

    /// Intersection matrix of the components.
    pub fn gram(&self, s: &SurfaceModel) -> Result<Vec<Vec<Q>>> {
        self.components
            .iter()
            .map(|a| self.components.iter().map(|b| s.pair(&a.cls, &b.cls)).collect())
            .collect()
    }

    fn sub(&self, idx: &[usize]) -> EffConfig {
        EffConfig { components: idx.iter().map(|&i| self.components[i].clone()).collect() }
    }
}

pub fn is_exceptional(s: &SurfaceModel, cfg: &EffConfig) -> Result<bool> {
    if cfg.is_empty() {
        return Ok(false);
    }
    is_negative_definite(&cfg.gram(s)?)
}

/// Components of the graph joining curves with positive intersection, in
/// order of first appearance.
pub fn connected_components(s: &SurfaceModel, cfg: &EffConfig) -> Result<Vec<EffConfig>> {
    let g = cfg.gram(s)?;
    let n = cfg.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut part = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < part.len() {
            let i = part[k];
            for j in 0..n {
                if !seen[j] && g[i][j].is_positive() {
                    seen[j] = true;
                    part.push(j);
                }
            }
            k += 1;
        }
        part.sort_unstable();
        out.push(cfg.sub(&part));
    }
    Ok(out)
}

/// Result of a Laufer run.
#[derive(Clone, Debug, PartialEq)]
pub struct LauferRun {
    pub cycle: EffConfig,
    pub steps: u64,
    /// Upper bound on the number of steps for this support.
    pub guard: u64,
}

pub fn numerical_cycle(s: &SurfaceModel, cfg: &EffConfig) -> Result<EffConfig> {
    Ok(numerical_cycle_by(s, cfg, |cands| cands[0])?.cycle)
}

/// Laufer's iteration from the reduced cycle; `choose` picks which of the
/// currently positive components to add next.
pub fn numerical_cycle_by(
    s: &SurfaceModel,
    cfg: &EffConfig,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<LauferRun> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let g = cfg.gram(s)?;
    if !is_negative_definite(&g)? {
        return Err(Error::NotExceptional);
    }
    let parts = connected_components(s, cfg)?.len();
    if parts != 1 {
        return Err(Error::NotConnected(parts));
    }
    let n = cfg.len();
    let guard = laufer_guard(&g);
    let mut z = vec![1u64; n];
    let mut steps = 0u64;
    loop {
        let cands: Vec<usize> = (0..n)
            .filter(|&j| {
                let v: Q = (0..n).map(|i| qi(z[i] as i64) * &g[i][j]).sum();
                v.is_positive()
            })
            .collect();
        if cands.is_empty() {
            break;
        }
        let j = choose(&cands);
        assert!(cands.contains(&j), "chooser returned a non-candidate");
        z[j] += 1;
        steps += 1;
        assert!(steps <= guard, "Laufer iteration exceeded its bound {guard}");
    }
    Ok(LauferRun { cycle: cfg.with_multiplicities(&z), steps, guard })
}

/// With `z0 = -G^{-1} 1` (entrywise positive for a connected negative
/// definite support) and `k` clearing its denominators, `k z0` is an integral
/// cycle with all pairings negative, so it dominates the numerical cycle.
fn laufer_guard(g: &[Vec<Q>]) -> u64 {
    let n = g.len();
    let ones = vec![-Q::one(); n];
    let z0 = solve(g, &ones).expect("negative definite matrix is invertible");
    let k = Q::from_integer(common_denominator(&z0));
    let total: Q = z0.iter().map(|x| x * &k).sum();
    (total.to_integer() - BigInt::from(n as u64)).to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SingKind {
    Rational,
    Elliptic,
    HighGenus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingClass {
    pub kind: SingKind,
    pub fundamental_cycle: EffConfig,
    pub pa_fundamental: i64,
}

pub fn classify_singularity(s: &SurfaceModel, cfg: &EffConfig) -> Result<SingClass> {
    let z = numerical_cycle(s, cfg)?;
    let pa = s.arithmetic_genus(&z.total(s)?)?;
    if pa.is_negative() || !pa.is_integer() {
        return Err(Error::NegativeCycleGenus(pa));
    }
    let p = pa.to_integer().to_i64().expect("genus fits in i64");
    let kind = match p {
        0 => SingKind::Rational,
        1 => SingKind::Elliptic,
        _ => SingKind::HighGenus,
    };
    Ok(SingClass { kind, fundamental_cycle: z, pa_fundamental: p })
}

/// Largest arithmetic genus among nonzero effective cycles `0 < D' <= Z`.
/// Exhaustive, so only meant for small configurations.
pub fn max_subcycle_genus(s: &SurfaceModel, z: &EffConfig) -> Result<Q> {
    let mult = z.multiplicities();
    let mut cur = vec![0u64; mult.len()];
    let mut best: Option<Q> = None;
    loop {
        // odometer increment
        let mut i = 0;
        while i < cur.len() && cur[i] == mult[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == cur.len() {
            break;
        }
        cur[i] += 1;
        let pa = s.arithmetic_genus(&z.with_multiplicities(&cur).total(s)?)?;
        if best.as_ref().is_none_or(|b| &pa > b) {
            best = Some(pa);
        }
    }
    best.ok_or(Error::EmptyConfig)
}

/// `true` when `Z.D_i <= 0` for every component of the support.
pub fn is_anti_nef_on_support(s: &SurfaceModel, z: &EffConfig, support: &EffConfig) -> Result<bool> {
    let t = z.total(s)?;
    for c in support.components() {
        if s.pair(&t, &c.cls)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(!t.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CurveRecord, ModelParts};

    /// `<2>` plus the negative of a Cartan matrix, with `K = 0`.
    fn cartan_model(cartan: &[&[i64]]) -> (SurfaceModel, EffConfig) {
        let n = cartan.len() + 1;
        let mut gram = vec![vec![qi(0); n]; n];
        gram[0][0] = qi(2);
        for (i, row) in cartan.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                gram[i + 1][j + 1] = qi(-v);
            }
        }
        let basis: Vec<String> =
            std::iter::once("H".to_string()).chain((1..n).map(|i| format!("D{i}"))).collect();
        let curves: Vec<CurveRecord> = (1..n)
            .map(|i| CurveRecord { label: basis[i].clone(), cls: DivClass::basis_vector(n, i), genus: Some(0) })
            .collect();
        let s = SurfaceModel::new(ModelParts {
            name: "cartan".into(),
            basis,
            gram,
            canonical: DivClass::zero(n),
            curves: curves.clone(),
            curves_complete: false,
            kodaira_nonneg: true,
            reference_positive_class: Some(DivClass::basis_vector(n, 0)),
            effective_generators: vec![],
        })
        .unwrap();
        let cfg = EffConfig::reduced_of(curves.into_iter().map(|c| (c.label, c.cls))).unwrap();
        (s, cfg)
    }

    fn d4() -> (SurfaceModel, EffConfig) {
        cartan_model(&[&[2, -1, -1, -1], &[-1, 2, 0, 0], &[-1, 0, 2, 0], &[-1, 0, 0, 2]])
    }

    #[test]
    fn d4_cycle() {
        let (s, cfg) = d4();
        assert!(is_exceptional(&s, &cfg).unwrap());
        assert_eq!(connected_components(&s, &cfg).unwrap().len(), 1);
        let run = numerical_cycle_by(&s, &cfg, |c| c[0]).unwrap();
        assert_eq!(run.cycle.multiplicities(), vec![2, 1, 1, 1]);
        assert_eq!(run.steps, 1);
        let c = classify_singularity(&s, &cfg).unwrap();
        assert_eq!(c.kind, SingKind::Rational);
        assert_eq!(c.pa_fundamental, 0);
    }

    #[test]
    fn a2_cycle_is_reduced() {
        let (s, cfg) = cartan_model(&[&[2, -1], &[-1, 2]]);
        assert_eq!(numerical_cycle(&s, &cfg).unwrap().multiplicities(), vec![1, 1]);
    }

    #[test]
    fn disjoint_curves_split() {
        let (s, cfg) = cartan_model(&[&[2, 0], &[0, 2]]);
        let parts = connected_components(&s, &cfg).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(matches!(numerical_cycle(&s, &cfg), Err(Error::NotConnected(2))));
    }

    #[test]
    fn rejects_bad_configs() {
        let c = DivClass::from_ints(&[0, 1]);
        let comp = |m| Component { label: "C".into(), cls: c.clone(), multiplicity: m };
        assert!(EffConfig::new(vec![comp(0)]).is_err());
        assert!(EffConfig::new(vec![comp(1), comp(2)]).is_err());
    }

    #[test]
    fn subcycle_genus_of_d4_is_zero() {
        let (s, cfg) = d4();
        let z = numerical_cycle(&s, &cfg).unwrap();
        assert_eq!(max_subcycle_genus(&s, &z).unwrap(), qi(0));
    }
}
