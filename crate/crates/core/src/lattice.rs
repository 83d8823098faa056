//! Numerical model of the Néron–Severi space of a smooth projective surface.
//!
//! A [`SurfaceModel`] is a finite basis with an exact symmetric intersection
//! form, the canonical class, and a roster of irreducible curves. Positivity
//! tests only ever see the roster, so when the roster is not known to
//! generate the closed cone of curves a positive answer is reported as
//! [`Positivity::ConditionalYes`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::QuadBound;
use crate::rational::{fmt_q, qi, Q};

/// A divisor class as coordinates in the basis of its surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivClass(Vec<Q>);

impl DivClass {
    pub fn new(coeffs: Vec<Q>) -> Self {
        DivClass(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivClass(coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivClass(vec![Q::zero(); rank])
    }

    pub fn basis_vector(rank: usize, i: usize) -> Self {
        let mut v = vec![Q::zero(); rank];
        v[i] = Q::one();
        DivClass(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Q) -> Self {
        DivClass(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Q, other: &DivClass) -> Self {
        assert_eq!(self.rank(), other.rank(), "class rank mismatch");
        DivClass(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// If `self == k * other` for some rational `k`, returns `k`.
    pub fn ratio_to(&self, other: &DivClass) -> Option<Q> {
        let pivot = other.0.iter().position(|c| !c.is_zero())?;
        let k = &self.0[pivot] / &other.0[pivot];
        (other.scale(&k) == *self).then_some(k)
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.add_scaled(&Q::one(), rhs)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self.add_scaled(&-Q::one(), rhs)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.scale(&-Q::one())
    }
}

/// An irreducible curve known to lie on the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRecord {
    pub label: String,
    pub cls: DivClass,
    pub genus: Option<u64>,
}

/// A labelled class (effective generator, featured divisor or polarisation).
#[derive(Clone, Debug, PartialEq)]
pub struct NamedClass {
    pub label: String,
    pub cls: DivClass,
}

impl NamedClass {
    pub fn new(label: impl Into<String>, cls: DivClass) -> Self {
        NamedClass { label: label.into(), cls }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Positivity {
    Yes,
    No,
    ConditionalYes,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityVerdict {
    pub status: Positivity,
    /// Offending (or, for a pass, binding) curves with their pairing.
    pub reasons: Vec<(String, Q)>,
}

impl PositivityVerdict {
    /// True for `Yes` and `ConditionalYes`.
    pub fn passes(&self) -> bool {
        self.status != Positivity::No
    }

    pub fn is_conditional(&self) -> bool {
        self.status == Positivity::ConditionalYes
    }
}

/// Raw ingredients of a [`SurfaceModel`], checked by [`SurfaceModel::new`].
#[derive(Clone, Debug)]
pub struct ModelParts {
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Q>>,
    pub canonical: DivClass,
    pub curves: Vec<CurveRecord>,
    pub curves_complete: bool,
    pub kodaira_nonneg: bool,
    pub reference_positive_class: Option<DivClass>,
    pub effective_generators: Vec<NamedClass>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceModel {
    name: String,
    basis: Vec<String>,
    gram: Vec<Vec<Q>>,
    canonical: DivClass,
    curves: Vec<CurveRecord>,
    curves_complete: bool,
    kodaira_nonneg: bool,
    reference_positive_class: Option<DivClass>,
    effective_generators: Vec<NamedClass>,
}

pub fn is_valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl SurfaceModel {
    pub fn new(parts: ModelParts) -> Result<Self> {
        let rank = parts.basis.len();
        if rank == 0 {
            return Err(Error::Invalid("empty basis".into()));
        }
        for label in &parts.basis {
            if !is_valid_label(label) {
                return Err(Error::BadLabel(label.clone()));
            }
        }
        for (i, l) in parts.basis.iter().enumerate() {
            if parts.basis[..i].contains(l) {
                return Err(Error::BadLabel(format!("{l} (repeated)")));
            }
        }
        check_square(&parts.gram)?;
        if parts.gram.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: parts.gram.len() });
        }
        check_symmetric(&parts.gram)?;
        let (pos, neg, zero) = inertia(&parts.gram);
        if pos != 1 || neg != rank - 1 {
            return Err(Error::Signature { pos, neg, zero });
        }
        let model = SurfaceModel {
            name: parts.name,
            basis: parts.basis,
            gram: parts.gram,
            canonical: parts.canonical,
            curves: parts.curves,
            curves_complete: parts.curves_complete,
            kodaira_nonneg: parts.kodaira_nonneg,
            reference_positive_class: parts.reference_positive_class,
            effective_generators: parts.effective_generators,
        };
        model.check_dim(&model.canonical)?;
        for g in &model.effective_generators {
            model.check_dim(&g.cls)?;
        }
        for (i, c) in model.curves.iter().enumerate() {
            model.check_dim(&c.cls)?;
            let value = model.form(&model.canonical, &c.cls) + model.form(&c.cls, &c.cls);
            let half = &value / qi(2);
            if !half.is_integer() {
                return Err(Error::Adjunction { label: c.label.clone(), value });
            }
            if let Some(g) = c.genus {
                let computed = half + Q::one();
                if computed != qi(g as i64) {
                    return Err(Error::GenusMismatch { label: c.label.clone(), declared: g, computed });
                }
            }
            if model.curves_complete
                && model.form(&c.cls, &c.cls).is_negative()
                && model.curves[..i].iter().any(|o| o.cls == c.cls)
            {
                return Err(Error::DuplicateNegativeCurve { label: c.label.clone() });
            }
        }
        if let Some(r) = &model.reference_positive_class {
            model.check_dim(r)?;
            if !model.form(r, r).is_positive() {
                return Err(Error::InvalidPolarisation(
                    "reference class must have positive square".into(),
                ));
            }
        }
        if model.orientation_class().is_none() {
            return Err(Error::NoOrientation);
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivClass {
        &self.canonical
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn curves_complete(&self) -> bool {
        self.curves_complete
    }

    pub fn kodaira_nonneg(&self) -> bool {
        self.kodaira_nonneg
    }

    pub fn reference_positive_class(&self) -> Option<&DivClass> {
        self.reference_positive_class.as_ref()
    }

    pub fn effective_generators(&self) -> &[NamedClass] {
        &self.effective_generators
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn parts(&self) -> ModelParts {
        ModelParts {
            name: self.name.clone(),
            basis: self.basis.clone(),
            gram: self.gram.clone(),
            canonical: self.canonical.clone(),
            curves: self.curves.clone(),
            curves_complete: self.curves_complete,
            kodaira_nonneg: self.kodaira_nonneg,
            reference_positive_class: self.reference_positive_class.clone(),
            effective_generators: self.effective_generators.clone(),
        }
    }

    pub fn curve(&self, label: &str) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn basis_class(&self, label: &str) -> Option<DivClass> {
        let i = self.basis.iter().position(|b| b == label)?;
        Some(DivClass::basis_vector(self.rank(), i))
    }

    /// The class fixing the orientation of the positive cone: the first
    /// roster curve of positive square, else the declared reference class.
    pub fn orientation_class(&self) -> Option<&DivClass> {
        self.curves
            .iter()
            .map(|c| &c.cls)
            .find(|c| self.form(c, c).is_positive())
            .or(self.reference_positive_class.as_ref())
    }

    pub fn check_dim(&self, d: &DivClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: d.rank() });
        }
        Ok(())
    }

    /// Intersection pairing without the dimension check.
    pub(crate) fn form(&self, d: &DivClass, e: &DivClass) -> Q {
        debug_assert_eq!(d.rank(), self.rank());
        debug_assert_eq!(e.rank(), self.rank());
        let mut acc = Q::zero();
        for (i, di) in d.0.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            let mut row = Q::zero();
            for (j, ej) in e.0.iter().enumerate() {
                if !ej.is_zero() {
                    row += &self.gram[i][j] * ej;
                }
            }
            acc += di * row;
        }
        acc
    }

    /// `D.E`.
    pub fn pair(&self, d: &DivClass, e: &DivClass) -> Result<Q> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        Ok(self.form(d, e))
    }

    pub fn square(&self, d: &DivClass) -> Result<Q> {
        self.pair(d, d)
    }

    /// `p_a(D) = 1 + (K.D + D^2)/2`.
    pub fn arithmetic_genus(&self, d: &DivClass) -> Result<Q> {
        self.check_dim(d)?;
        Ok(Q::one() + (self.form(&self.canonical, d) + self.form(d, d)) / qi(2))
    }

    pub fn is_nef(&self, d: &DivClass) -> Result<PositivityVerdict> {
        self.check_dim(d)?;
        let reasons: Vec<_> = self
            .curves
            .iter()
            .filter_map(|c| {
                let v = self.form(d, &c.cls);
                v.is_negative().then(|| (c.label.clone(), v))
            })
            .collect();
        Ok(self.verdict(reasons))
    }

    /// Nakai–Moishezon test against the roster: `D^2 > 0`, `D.C > 0` for all
    /// roster curves, and `D` on the same side as the orientation class.
    pub fn is_ample(&self, d: &DivClass) -> Result<PositivityVerdict> {
        self.check_dim(d)?;
        let mut reasons = Vec::new();
        let d2 = self.form(d, d);
        if !d2.is_positive() {
            reasons.push(("<square>".to_string(), d2));
        }
        if let Some(h) = self.orientation_class() {
            let v = self.form(d, h);
            if !v.is_positive() {
                reasons.push(("<orientation>".to_string(), v));
            }
        }
        for c in &self.curves {
            let v = self.form(d, &c.cls);
            if !v.is_positive() {
                reasons.push((c.label.clone(), v));
            }
        }
        Ok(self.verdict(reasons))
    }

    fn verdict(&self, reasons: Vec<(String, Q)>) -> PositivityVerdict {
        let status = if !reasons.is_empty() {
            Positivity::No
        } else if self.curves_complete {
            Positivity::Yes
        } else {
            Positivity::ConditionalYes
        };
        PositivityVerdict { status, reasons }
    }

    /// Contracts the roster curve `e0` (numerically a -1 curve).
    ///
    /// The result lives on the orthogonal complement of `e0`, with basis the
    /// projections of all basis vectors except the last one on which `e0`
    /// has a nonzero coordinate; the retained labels are kept.
    pub fn contract_minus_one(&self, e0: &DivClass) -> Result<(SurfaceModel, Contraction)> {
        self.check_dim(e0)?;
        if self.rank() == 1 {
            return Err(Error::RankOneContraction);
        }
        let e2 = self.form(e0, e0);
        let ke = self.form(&self.canonical, e0);
        if e2 != -Q::one() || ke != -Q::one() {
            return Err(Error::NotMinusOneCurve(format!(
                "E^2 = {}, K.E = {}",
                fmt_q(&e2),
                fmt_q(&ke)
            )));
        }
        if !self.curves.iter().any(|c| &c.cls == e0) {
            return Err(Error::NotInRoster);
        }
        let drop = e0.0.iter().rposition(|c| !c.is_zero()).expect("nonzero class");
        let map = Contraction { e0: e0.clone(), drop };
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| i != drop).collect();
        let projected: Vec<DivClass> = keep
            .iter()
            .map(|&i| map.project(self, &DivClass::basis_vector(self.rank(), i)))
            .collect();
        let gram = projected
            .iter()
            .map(|a| projected.iter().map(|b| self.form(a, b)).collect())
            .collect();
        let mut curves: Vec<CurveRecord> = Vec::new();
        for c in &self.curves {
            if &c.cls == e0 {
                continue;
            }
            let cls = map.pushforward(&c.cls);
            if cls.is_zero() || curves.iter().any(|o| o.cls == cls) {
                continue;
            }
            let m = self.form(&c.cls, e0);
            // the image picks up m(m-1)/2 from the point it passes through
            let genus = c.genus.and_then(|g| {
                let extra = &m * (&m - Q::one()) / qi(2);
                extra.to_integer().try_into().ok().map(|e: u64| g + e)
            });
            curves.push(CurveRecord { label: c.label.clone(), cls, genus });
        }
        let effective_generators = self
            .effective_generators
            .iter()
            .filter(|g| &g.cls != e0)
            .map(|g| NamedClass::new(g.label.clone(), map.pushforward(&g.cls)))
            .filter(|g| !g.cls.is_zero())
            .collect();
        let parts = ModelParts {
            name: format!("{}/{}", self.name, label_of(self, e0)),
            basis: keep.iter().map(|&i| self.basis[i].clone()).collect(),
            gram,
            canonical: map.pushforward(&self.canonical),
            curves,
            curves_complete: self.curves_complete,
            kodaira_nonneg: self.kodaira_nonneg,
            reference_positive_class: self.reference_positive_class.as_ref().map(|r| map.pushforward(r)),
            effective_generators,
        };
        Ok((SurfaceModel::new(parts)?, map))
    }

    /// Decomposes `D = (L.D/L^2) L + orth` with `orth` orthogonal to `L`, and
    /// reports `y` with `orth = y * tau`, `tau.L = 0`, `tau^2 = -L^2`.
    pub fn plane_coordinates(&self, l: &DivClass, d: &DivClass) -> Result<PlaneFrame> {
        self.check_dim(l)?;
        self.check_dim(d)?;
        let l2 = self.form(l, l);
        if !l2.is_positive() {
            return Err(Error::InvalidPolarisation(format!("L^2 = {} is not positive", fmt_q(&l2))));
        }
        let ld = self.form(l, d);
        let along = &ld / &l2;
        let orth = d.add_scaled(&-&along, l);
        if orth.is_zero() {
            return Err(Error::ProportionalToPolarisation);
        }
        // orth^2 = -y^2 L^2
        let y2 = -self.form(&orth, &orth) / &l2;
        let y = QuadBound::sqrt(&y2);
        // after rescaling L so that L.D = L^2 the coordinate becomes y / along
        let y_normalised = along.is_positive().then(|| y.scale(&along.recip()));
        Ok(PlaneFrame { along, orth, y, y_normalised })
    }
}

fn label_of(s: &SurfaceModel, cls: &DivClass) -> String {
    s.curves
        .iter()
        .find(|c| &c.cls == cls)
        .map(|c| c.label.clone())
        .unwrap_or_else(|| "E".into())
}

/// Coordinates of a class in the plane it spans with a polarisation.
#[derive(Clone, Debug)]
pub struct PlaneFrame {
    /// `L.D / L^2`.
    pub along: Q,
    /// `D - along * L`, orthogonal to `L`.
    pub orth: DivClass,
    /// Non-negative `y` with `orth = y * tau`, `tau^2 = -L^2`.
    pub y: QuadBound,
    /// `y` after rescaling `L` to `along * L`; present when `L.D > 0`.
    pub y_normalised: Option<QuadBound>,
}

/// Pushforward along the contraction of a -1 curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    e0: DivClass,
    drop: usize,
}

impl Contraction {
    pub fn curve(&self) -> &DivClass {
        &self.e0
    }

    /// `D + (D.E0) E0`, in the original coordinates.
    pub fn project(&self, s: &SurfaceModel, d: &DivClass) -> DivClass {
        d.add_scaled(&s.form(d, &self.e0), &self.e0)
    }

    /// Coordinates of the projection in the contracted model's basis.
    pub fn pushforward(&self, d: &DivClass) -> DivClass {
        // P(e_drop) = -(1/e0_drop) * sum_{i != drop} e0_i P(e_i)
        let k = &d.0[self.drop] / &self.e0.0[self.drop];
        d.0.iter()
            .zip(&self.e0.0)
            .enumerate()
            .filter(|(i, _)| *i != self.drop)
            .map(|(_, (di, ei))| di - &k * ei)
            .collect::<Vec<_>>()
            .pipe(DivClass)
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}

fn check_square(m: &[Vec<Q>]) -> Result<()> {
    for (row, r) in m.iter().enumerate() {
        if r.len() != m.len() {
            return Err(Error::NotSquare { rows: m.len(), row, len: r.len() });
        }
    }
    Ok(())
}

fn check_symmetric(m: &[Vec<Q>]) -> Result<()> {
    for i in 0..m.len() {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix, by
/// exact congruence diagonalisation.
pub fn inertia(m: &[Vec<Q>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            // find a nonzero diagonal entry below, else create one from an
            // off-diagonal entry via e_k <- e_k + e_j
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = Q::zero();
            a[i][k] = Q::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<Q>]) -> Result<Vec<Q>> {
    check_square(m)?;
    let n = m.len();
    let mut a = m.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut det = Q::one();
    for k in 0..n {
        let p = a[k][k].clone();
        if p.is_zero() {
            // elimination without pivoting stops; finish by direct determinants
            for j in k..n {
                let sub: Vec<Vec<Q>> = m[..=j].iter().map(|r| r[..=j].to_vec()).collect();
                minors.push(determinant(&sub));
            }
            return Ok(minors);
        }
        det *= &p;
        minors.push(det.clone());
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
    }
    Ok(minors)
}

/// Determinant by Gaussian elimination with row pivoting.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Q::zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        let p = a[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
        }
    }
    det
}

/// Sylvester's criterion: the k-th leading principal minor has sign `(-1)^k`.
pub fn is_negative_definite(m: &[Vec<Q>]) -> Result<bool> {
    let minors = leading_minors(m)?;
    Ok(minors.iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    }))
}

/// Solves `M x = b` exactly; `None` when `M` is singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(piv, k);
        let p = a[k][k].clone();
        for c in k..=n {
            a[k][c] = &a[k][c] / &p;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for c in k..=n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Renders a class in the command-line class syntax, e.g. `3H-E`.
pub struct ClassDisplay<'a> {
    pub basis: &'a [String],
    pub cls: &'a DivClass,
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.cls.coeffs().iter().zip(self.basis) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if !mag.is_one() {
                f.write_str(&fmt_q(&mag))?;
            }
            f.write_str(label)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl SurfaceModel {
    pub fn display<'a>(&'a self, cls: &'a DivClass) -> ClassDisplay<'a> {
        ClassDisplay { basis: &self.basis, cls }
    }
}
