//! Light-cone mode calculus: fields expanded as `Σ a_{n,m,σ} (z²)^n h_{m,σ}(z)`.
//!
//! Series carry an explicit [`Truncation`]: a coefficient is known when its Laurent degree
//! `2n + m` does not exceed `max_degree`, and within that region coefficients with
//! `n < n_min` vanish. Asking for anything outside the known region is a
//! [`Error::Truncation`].

mod form;
mod harmonic;
mod iota;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

pub(crate) use form::ConeForm;
pub(crate) use harmonic::cached_basis;
pub use harmonic::{
    exponent_vectors, gauss_decompose, gauss_decompose_in, gauss_reconstruct, h_dim,
    harmonic_basis, monomials_of_degree, zvar, HarmonicBasis,
};
pub use iota::{iota_antisym, iota_expand, KernelMonomial, Side};
pub(crate) use iota::{iota_kernel_form, kernel_form};

use crate::error::{Error, Result};
use crate::exactalg::{Family, Monomial, Poly, Rational};
use crate::pseudoalg::ModuleElement;

/// Mode label `{n, m, σ}` of `(z²)^n h_{m,σ}(z)`; `σ` is one based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeIndex {
    pub n: i64,
    pub m: u32,
    pub sigma: usize,
}

impl ConeIndex {
    pub const fn new(n: i64, m: u32, sigma: usize) -> Self {
        ConeIndex { n, m, sigma }
    }

    /// Total degree `2n + m` of the mode.
    pub fn degree(&self) -> i64 {
        2 * self.n + self.m as i64
    }

    /// In one variable `z^d = (z²)^{⌊d/2⌋} z^{d mod 2}`.
    pub fn from_laurent(d: i64) -> Self {
        ConeIndex::new(d.div_euclid(2), d.rem_euclid(2) as u32, 1)
    }
}

impl fmt::Display for ConeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.n, self.m, self.sigma)
    }
}

/// Known region of a series in one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    /// Pole bound: known coefficients with `n < n_min` are zero.
    pub n_min: i64,
    /// Largest total degree `2n + m` with known coefficients; `None` means exact.
    pub max_degree: Option<i64>,
}

impl Truncation {
    pub fn exact(n_min: i64) -> Self {
        Truncation {
            n_min,
            max_degree: None,
        }
    }

    pub fn is_known(&self, idx: &ConeIndex) -> bool {
        self.max_degree.is_none_or(|d| idx.degree() <= d)
    }
}

/// Coefficients a cone series can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_in(dim: usize) -> Self;
    fn is_zero_coeff(&self) -> bool;
    /// Generator index and T-polynomial pairs; scalars use generator 0.
    fn parts(&self) -> Vec<(usize, Poly)>;
    fn from_parts(dim: usize, parts: BTreeMap<usize, Poly>) -> Self;
}

impl Coefficient for Rational {
    fn zero_in(_: usize) -> Self {
        Rational::zero()
    }

    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }

    fn parts(&self) -> Vec<(usize, Poly)> {
        vec![(0, Poly::constant(0, self.clone()))]
    }

    fn from_parts(_: usize, parts: BTreeMap<usize, Poly>) -> Self {
        parts
            .get(&0)
            .map(|p| p.constant_term())
            .unwrap_or_else(Rational::zero)
    }
}

impl Coefficient for ModuleElement {
    fn zero_in(dim: usize) -> Self {
        ModuleElement::zero(dim)
    }

    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }

    fn parts(&self) -> Vec<(usize, Poly)> {
        self.coords().iter().map(|(g, p)| (*g, p.clone())).collect()
    }

    fn from_parts(dim: usize, parts: BTreeMap<usize, Poly>) -> Self {
        ModuleElement::from_coords(dim, parts).expect("T-polynomial coordinates")
    }
}

/// A cone-mode series in the `z` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSeries<C> {
    dim: usize,
    coeffs: BTreeMap<ConeIndex, C>,
    truncation: Truncation,
}

fn check_index(dim: usize, idx: &ConeIndex) -> Result<()> {
    let h = h_dim(dim, idx.m);
    if idx.sigma == 0 || idx.sigma > h {
        return Err(Error::Argument(format!(
            "mode {idx} does not exist: there are {h} harmonic polynomials of degree {} in D = {dim}",
            idx.m
        )));
    }
    Ok(())
}

impl<C: Coefficient> ConeSeries<C> {
    pub fn new(
        dim: usize,
        coeffs: impl IntoIterator<Item = (ConeIndex, C)>,
        truncation: Truncation,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Argument("cone series need D >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            check_index(dim, &idx)?;
            if c.is_zero_coeff() {
                continue;
            }
            if idx.n < truncation.n_min || !truncation.is_known(&idx) {
                return Err(Error::Truncation(format!(
                    "coefficient at {idx} lies outside the declared truncation"
                )));
            }
            if map.insert(idx, c).is_some() {
                return Err(Error::Argument(format!("duplicate mode {idx}")));
            }
        }
        Ok(ConeSeries {
            dim,
            coeffs: map,
            truncation,
        })
    }

    /// Exact finite series; the pole bound is the least `n` present (0 when there is none).
    pub fn exact(dim: usize, coeffs: impl IntoIterator<Item = (ConeIndex, C)>) -> Result<Self> {
        let coeffs: Vec<_> = coeffs.into_iter().collect();
        let n_min = coeffs.iter().map(|(i, _)| i.n).min().unwrap_or(0).min(0);
        ConeSeries::new(dim, coeffs, Truncation::exact(n_min))
    }

    pub fn zero(dim: usize) -> Self {
        ConeSeries {
            dim,
            coeffs: BTreeMap::new(),
            truncation: Truncation::exact(0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<ConeIndex, C> {
        &self.coeffs
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient at `idx`, or a truncation error when it is not determined.
    pub fn coefficient(&self, idx: &ConeIndex) -> Result<C> {
        check_index(self.dim, idx)?;
        if !self.truncation.is_known(idx) {
            return Err(Error::Truncation(format!(
                "mode {idx} has degree {} beyond the known degree {}",
                idx.degree(),
                self.truncation.max_degree.unwrap_or_default()
            )));
        }
        Ok(self
            .coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| C::zero_in(self.dim)))
    }

    pub(crate) fn to_form(&self) -> ConeForm {
        let mut f = ConeForm::zero(self.dim, &[Family::Z]);
        for (idx, c) in &self.coeffs {
            let h = cached_basis(self.dim, idx.m).polys()[idx.sigma - 1].clone();
            for (g, p) in c.parts() {
                let p = p.embed(self.dim).expect("coefficient dimension");
                f.add_harmonic(vec![idx.n], g, &h * &p);
            }
        }
        f
    }

    pub(crate) fn from_form(form: &ConeForm, truncation: Truncation) -> Self {
        let dim = form.dim();
        let mut acc: BTreeMap<ConeIndex, BTreeMap<usize, Poly>> = BTreeMap::new();
        for ((sh, g), p) in form.terms() {
            for (zm, rest) in p.coefficients_in(Family::Z) {
                let m = zm.degree_in(Family::Z);
                let Some(sigma) = cached_basis(dim, m).sigma_of_pivot(&zm) else {
                    continue;
                };
                let idx = ConeIndex::new(sh[0], m, sigma);
                if !truncation.is_known(&idx) {
                    continue;
                }
                let slot = acc.entry(idx).or_default();
                slot.entry(*g)
                    .or_insert_with(|| Poly::zero(dim))
                    .add_assign_ref(&rest);
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|(idx, mut parts)| {
                parts.retain(|_, p| !p.is_zero());
                (idx, C::from_parts(dim, parts))
            })
            .filter(|(_, c)| !c.is_zero_coeff())
            .collect();
        ConeSeries {
            dim,
            coeffs,
            truncation,
        }
    }
}

impl<C: Coefficient> fmt::Display for ConeSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (idx, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{idx}")?;
        }
        if let Some(d) = self.truncation.max_degree {
            write!(f, " + O(deg > {d})")?;
        }
        Ok(())
    }
}

fn require_z_poly(p: &Poly, dim: usize) -> Result<()> {
    if p.dim() != dim {
        return Err(Error::Workspace(format!(
            "polynomial lives in D = {}, series in D = {dim}",
            p.dim()
        )));
    }
    if p.families().iter().any(|f| *f != Family::Z) {
        return Err(Error::Argument(format!("{p} is not a polynomial in z")));
    }
    Ok(())
}

/// Cone-mode coefficients of a polynomial in `z`.
pub fn cone_from_poly(p: &Poly) -> Result<ConeSeries<Rational>> {
    let dim = p.dim();
    if dim == 0 {
        return Err(Error::Argument("cone series need D >= 1".into()));
    }
    require_z_poly(p, dim)?;
    let mut f = ConeForm::zero(dim, &[Family::Z]);
    f.add_poly(&[0], 0, p);
    Ok(ConeSeries::from_form(&f, Truncation::exact(0)))
}

/// `s · (z²)^k · p`. The known degree drops by the lowest degree present in `p` and moves
/// by `2k`; the pole bound moves by `k`.
pub fn cone_mul<C: Coefficient>(s: &ConeSeries<C>, p: &Poly, k: i64) -> Result<ConeSeries<C>> {
    require_z_poly(p, s.dim)?;
    if p.is_zero() {
        return Ok(ConeSeries::zero(s.dim));
    }
    let low = p.terms().map(|(m, _)| m.degree() as i64).min().unwrap_or(0);
    let truncation = Truncation {
        n_min: s.truncation.n_min + k,
        max_degree: s.truncation.max_degree.map(|d| d + 2 * k + low),
    };
    let f = s.to_form().mul_poly(p).shift(Family::Z, k);
    Ok(ConeSeries::from_form(&f, truncation))
}

/// Terms with `n < 0`.
pub fn singular_part<C: Coefficient>(s: &ConeSeries<C>) -> ConeSeries<C> {
    ConeSeries {
        dim: s.dim,
        coeffs: s
            .coeffs
            .iter()
            .filter(|(i, _)| i.n < 0)
            .map(|(i, c)| (*i, c.clone()))
            .collect(),
        truncation: s.truncation,
    }
}

/// `Res = a_{-D/2, 0, 1}`, defined for even `D`.
pub fn residue<C: Coefficient>(s: &ConeSeries<C>) -> Result<C> {
    if s.dim % 2 == 1 {
        return Err(Error::Domain(format!(
            "the residue mode -D/2 is not an integer for D = {}",
            s.dim
        )));
    }
    s.coefficient(&ConeIndex::new(-(s.dim as i64) / 2, 0, 1))
}

/// The Wick coefficient `a_{0,0,1}`.
pub fn wick_extract<C: Coefficient>(s: &ConeSeries<C>) -> Result<C> {
    s.coefficient(&ConeIndex::new(0, 0, 1))
}

/// Scalar series in two cone variables `z` and `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiConeSeries {
    dim: usize,
    coeffs: BTreeMap<(ConeIndex, ConeIndex), Rational>,
    truncation: [Truncation; 2],
}

impl BiConeSeries {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<(ConeIndex, ConeIndex), Rational> {
        &self.coeffs
    }

    /// Truncations in `z` and in `w`.
    pub fn truncation(&self) -> [Truncation; 2] {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, z: &ConeIndex, w: &ConeIndex) -> Result<Rational> {
        check_index(self.dim, z)?;
        check_index(self.dim, w)?;
        if !self.truncation[0].is_known(z) || !self.truncation[1].is_known(w) {
            return Err(Error::Truncation(format!(
                "mode ({z}, {w}) lies outside the known window"
            )));
        }
        Ok(self
            .coeffs
            .get(&(*z, *w))
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    pub(crate) fn from_form(form: &ConeForm, truncation: [Truncation; 2]) -> Self {
        let dim = form.dim();
        let mut coeffs: BTreeMap<(ConeIndex, ConeIndex), Rational> = BTreeMap::new();
        for ((sh, _), p) in form.terms() {
            for (m, c) in p.terms() {
                let (zm, rest) = m.split_family(Family::Z);
                let (wm, _) = rest.split_family(Family::W);
                let (mz, mw) = (zm.degree_in(Family::Z), wm.degree_in(Family::W));
                let (Some(sz), Some(sw)) = (
                    cached_basis(dim, mz).sigma_of_pivot(&zm),
                    cached_basis(dim, mw).sigma_of_pivot(&wm.rename_to_z()),
                ) else {
                    continue;
                };
                let key = (ConeIndex::new(sh[0], mz, sz), ConeIndex::new(sh[1], mw, sw));
                if !truncation[0].is_known(&key.0) || !truncation[1].is_known(&key.1) {
                    continue;
                }
                *coeffs.entry(key).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        BiConeSeries {
            dim,
            coeffs,
            truncation,
        }
    }
}

impl fmt::Display for BiConeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, ((z, w), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{z}⊗{w}")?;
        }
        Ok(())
    }
}

trait RenameToZ {
    fn rename_to_z(&self) -> Monomial;
}

impl RenameToZ for Monomial {
    fn rename_to_z(&self) -> Monomial {
        Monomial::from_pairs(
            self.pairs()
                .iter()
                .map(|&(v, e)| (crate::exactalg::Var::new(Family::Z, v.index), e)),
        )
    }
}

#[cfg(test)]
mod tests;
