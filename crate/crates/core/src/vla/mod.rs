//! Vertex Lie algebras in `D` dimensions given by finite singular action data
//! `a_i(z)_{s.p.} a_j`, with checkers for skewsymmetry, the Jacobi identity and the
//! Borcherds identity restricted to singular parts.
//!
//! A checker window `W` compares every coefficient whose harmonic degree is at most `W` in
//! each variable. In one variable harmonic degrees are 0 and 1, so any `W >= 1` compares
//! everything.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::conecalc::{
    cached_basis, iota_kernel_form, kernel_form, ConeForm, ConeIndex, ConeSeries, KernelMonomial,
    Side,
};
use crate::error::{Error, Result};
use crate::exactalg::rational::{binomial, factorial, int, sign_pow};
use crate::exactalg::{Family, Monomial, Poly, Rational, Var};
use crate::opecalc1d::jth_from_lambda;
use crate::pseudoalg::{BracketTable, ModuleElement};
use crate::report::CheckReport;

/// Singular action data `a_i(z)_{s.p.} a_j` over the free `ℚ[T]`-module on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VLAStructure {
    dim: usize,
    generators: Vec<String>,
    actions: Vec<ConeSeries<ModuleElement>>,
    forms: Vec<ConeForm>,
}

impl VLAStructure {
    /// Builds a structure from row-major actions; only singular parts are kept.
    pub fn new(
        dim: usize,
        generators: Vec<String>,
        actions: Vec<ConeSeries<ModuleElement>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Construction(
                "vertex Lie algebras need D >= 1".into(),
            ));
        }
        let r = generators.len();
        if r == 0 {
            return Err(Error::Construction("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Construction(format!("duplicate generator {g}")));
            }
        }
        if actions.len() != r * r {
            return Err(Error::Construction(format!(
                "{} actions given, expected {}",
                actions.len(),
                r * r
            )));
        }
        let mut kept = Vec::with_capacity(actions.len());
        for (k, s) in actions.into_iter().enumerate() {
            let (i, j) = (k / r, k % r);
            if s.dim() != dim {
                return Err(Error::Construction(format!(
                    "action ({i},{j}) lives in D = {}",
                    s.dim()
                )));
            }
            if s.truncation().max_degree.is_some() {
                return Err(Error::Construction(format!(
                    "action ({i},{j}) must be given exactly"
                )));
            }
            for c in s.coeffs().values() {
                if c.dim() != dim || c.max_generator().is_some_and(|g| g >= r) {
                    return Err(Error::Construction(format!(
                        "action ({i},{j}) has a coefficient outside the module"
                    )));
                }
            }
            kept.push(crate::conecalc::singular_part(&s));
        }
        let forms = kept.iter().map(|s| s.to_form()).collect();
        Ok(VLAStructure {
            dim,
            generators,
            actions: kept,
            forms,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// `a_i(z)_{s.p.} a_j`.
    pub fn action(&self, i: usize, j: usize) -> &ConeSeries<ModuleElement> {
        &self.actions[i * self.rank() + j]
    }

    pub fn actions(&self) -> impl Iterator<Item = ((usize, usize), &ConeSeries<ModuleElement>)> {
        let r = self.rank();
        self.actions
            .iter()
            .enumerate()
            .map(move |(k, s)| ((k / r, k % r), s))
    }

    /// Pole order `N_ij`: the least `N >= 0` with `(z²)^N a_i(z) a_j` regular.
    pub fn pole_order(&self, i: usize, j: usize) -> u32 {
        self.action(i, j)
            .coeffs()
            .keys()
            .map(|idx| (-idx.n).max(0) as u32)
            .max()
            .unwrap_or(0)
    }

    /// The largest pole order over all pairs.
    pub fn max_pole_order(&self) -> u32 {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| self.pole_order(i, j))
            .max()
            .unwrap_or(0)
    }

    fn check_element(&self, x: &ModuleElement) -> Result<()> {
        if x.dim() != self.dim || x.max_generator().is_some_and(|g| g >= self.rank()) {
            return Err(Error::Argument(format!(
                "{x} is not an element of this structure's module"
            )));
        }
        Ok(())
    }

    /// `x(z) y` as a form in the cone family `fam`.
    fn extend_form(&self, x: &ModuleElement, y: &ModuleElement, fam: Family) -> ConeForm {
        let mut out = ConeForm::zero(self.dim, &[fam]);
        for (i, p) in x.coords() {
            for (j, q) in y.coords() {
                let base = &self.forms[i * self.rank() + j];
                if base.is_zero() {
                    continue;
                }
                let base = if fam == Family::Z {
                    base.clone()
                } else {
                    base.rename(Family::Z, fam)
                };
                let right = apply_shifted(&base, q, fam);
                out = out.add(&apply_derivative(&right, p, fam));
            }
        }
        out
    }
}

/// `P(∂_x)` applied to a form, for a T-polynomial `P`.
fn apply_derivative(form: &ConeForm, p: &Poly, fam: Family) -> ConeForm {
    let dim = form.dim();
    let mut out = ConeForm::zero(dim, form.fams());
    for (m, c) in p.terms() {
        let exps = m.exponents_in(Family::T, dim);
        out = out.add(&form.diff_multi(fam, &exps).scale(c));
    }
    out
}

/// `Q(T - ∂_x)` applied to a form: `Π_α (T_α - ∂_α)^{β_α}` expanded binomially.
fn apply_shifted(form: &ConeForm, q: &Poly, fam: Family) -> ConeForm {
    let dim = form.dim();
    let mut out = ConeForm::zero(dim, form.fams());
    for (m, c) in q.terms() {
        let beta = m.exponents_in(Family::T, dim);
        for i in exponent_box(&beta) {
            let mut coeff = c.clone() * sign_pow(i.iter().sum());
            let mut rest = Vec::with_capacity(dim);
            for (b, e) in beta.iter().zip(&i) {
                coeff *= binomial(*b as i64, *e);
                rest.push(b - e);
            }
            let tpart = Poly::monomial(dim, Monomial::from_exponents(Family::T, &rest), coeff);
            out = out.add(&form.diff_multi(fam, &i).mul_poly(&tpart));
        }
    }
    out
}

/// All exponent vectors `i` with `0 <= i <= beta` componentwise.
fn exponent_box(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in beta {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=b).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// `x(z) y` from the generator actions by translation covariance.
pub fn extend_action(
    s: &VLAStructure,
    x: &ModuleElement,
    y: &ModuleElement,
) -> Result<ConeSeries<ModuleElement>> {
    s.check_element(x)?;
    s.check_element(y)?;
    let form = s.extend_form(x, y, Family::Z);
    let n_min = form.min_shift(Family::Z).unwrap_or(0).min(0);
    Ok(ConeSeries::from_form(
        &form,
        crate::conecalc::Truncation::exact(n_min),
    ))
}

/// Harmonic-degree bound that matters in dimension `dim`.
fn effective_window(dim: usize, window: u32) -> i64 {
    if dim == 1 {
        window.min(1) as i64
    } else {
        window as i64
    }
}

/// Module-valued coefficients of a form keyed by one cone index per family.
fn coefficients(form: &ConeForm) -> BTreeMap<Vec<ConeIndex>, ModuleElement> {
    let dim = form.dim();
    let fams = form.fams().to_vec();
    let mut acc: BTreeMap<Vec<ConeIndex>, BTreeMap<usize, Poly>> = BTreeMap::new();
    for ((sh, g), p) in form.terms() {
        for (m, c) in p.terms() {
            let mut rest = m.clone();
            let mut key = Vec::with_capacity(fams.len());
            let mut ok = true;
            for (slot, f) in fams.iter().enumerate() {
                let (inside, r) = rest.split_family(*f);
                rest = r;
                let as_z = Monomial::from_pairs(
                    inside
                        .pairs()
                        .iter()
                        .map(|&(v, e)| (Var::new(Family::Z, v.index), e)),
                );
                let mdeg = as_z.degree();
                match cached_basis(dim, mdeg).sigma_of_pivot(&as_z) {
                    Some(sigma) => key.push(ConeIndex::new(sh[slot], mdeg, sigma)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            acc.entry(key)
                .or_default()
                .entry(*g)
                .or_insert_with(|| Poly::zero(dim))
                .add_term(rest, c.clone());
        }
    }
    acc.into_iter()
        .filter_map(|(k, mut parts)| {
            parts.retain(|_, p| !p.is_zero());
            let x = ModuleElement::from_coords(dim, parts).expect("T-polynomial coordinates");
            (!x.is_zero()).then_some((k, x))
        })
        .collect()
}

fn fmt_key(key: &[ConeIndex], fams: &[Family]) -> String {
    key.iter()
        .zip(fams)
        .map(|(i, f)| format!("{i}({})", f.symbol()))
        .collect::<Vec<_>>()
        .join("")
}

/// First coefficient where two forms differ, described with generator names.
fn first_difference(left: &ConeForm, right: &ConeForm, names: &[String]) -> Option<String> {
    if left == right {
        return None;
    }
    let (l, r) = (coefficients(left), coefficients(right));
    let zero = ModuleElement::zero(left.dim());
    let keys: std::collections::BTreeSet<_> = l.keys().chain(r.keys()).cloned().collect();
    keys.into_iter().find_map(|k| {
        let a = l.get(&k).unwrap_or(&zero);
        let b = r.get(&k).unwrap_or(&zero);
        (a != b).then(|| {
            format!(
                "coefficient of {}: left {}, right {}",
                fmt_key(&k, left.fams()),
                a.display_with(names),
                b.display_with(names)
            )
        })
    })
}

/// `a(z)_{s.p.} b = (e^{z·T} (b(-z) a))_{s.p.}` for every generator pair.
pub fn skew_check_vla(s: &VLAStructure, window: u32) -> Result<CheckReport> {
    let r = s.rank();
    let dim = s.dim;
    let w = effective_window(dim, window);
    let zt = Poly::dot(dim, Family::Z, Family::T);
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let lhs = s.forms[i * r + j].harmonic_window(&[Family::Z], w as u32);
            let flipped = s.forms[j * r + i].parity(Family::Z);
            let mut rhs = ConeForm::zero(dim, &[Family::Z]);
            if let Some(dmin) = flipped.min_degree(Family::Z) {
                // (z·T)^k raises the z-degree by k; beyond this no singular term of harmonic
                // degree <= w can appear.
                let kmax = w - 2 - dmin;
                let mut power = Poly::one(dim);
                for k in 0..=kmax.max(-1) {
                    let term = flipped
                        .mul_poly(&power)
                        .scale(&(int(1) / factorial(k as u32)));
                    rhs = rhs.add(&term.singular_in(&[Family::Z]));
                    power = &power * &zt;
                }
            }
            let rhs = rhs.harmonic_window(&[Family::Z], w as u32);
            first_difference(&lhs, &rhs, &s.generators)
        })
        .collect();
    let mut report = CheckReport::new("vla-skew");
    for ((i, j), wit) in pairs.into_iter().zip(results) {
        report.push(vec![s.generators[i].clone(), s.generators[j].clone()], wit);
    }
    Ok(report)
}

/// Multiplies every coefficient `x` of a one-variable form in `outer` by the action of `x`
/// on nothing else: `Σ (o²)^n o^μ x ↦ Σ (o²)^n o^μ · act(x)`, where `act` returns a form
/// in the other variable.
fn compose(
    outer: &ConeForm,
    outer_fam: Family,
    act: impl Fn(&ModuleElement) -> ConeForm,
) -> ConeForm {
    let dim = outer.dim();
    let mut out = ConeForm::zero(dim, &[Family::Z, Family::W]);
    for ((sh, g), p) in outer.terms() {
        for (om, q) in p.coefficients_in(outer_fam) {
            let x = ModuleElement::from_coords(dim, [(*g, q)]).expect("T-polynomial");
            let inner = act(&x);
            let monomial = Poly::monomial(dim, om, Rational::from_integer(1.into()));
            for ((ish, ig), ip) in inner.terms() {
                let mut shifts = vec![0, 0];
                let (os, is) = if outer_fam == Family::Z {
                    (0, 1)
                } else {
                    (1, 0)
                };
                shifts[os] = sh[0];
                shifts[is] = ish[0];
                out.add_poly(&shifts, *ig, &(&monomial * ip));
            }
        }
    }
    out
}

/// `a(z)_{s.p.}(b(w)_{s.p.} c)` as a form in `z`, `w`.
fn nested_zw(s: &VLAStructure, a: usize, b: usize, c: usize) -> ConeForm {
    let r = s.rank();
    let bw = s.forms[b * r + c].rename(Family::Z, Family::W);
    compose(&bw, Family::W, |x| {
        s.extend_form(&ModuleElement::generator(s.dim, a), x, Family::Z)
    })
}

/// `b(w)_{s.p.}(a(z)_{s.p.} c)`.
fn nested_wz(s: &VLAStructure, a: usize, b: usize, c: usize) -> ConeForm {
    let r = s.rank();
    compose(&s.forms[a * r + c], Family::Z, |x| {
        s.extend_form(&ModuleElement::generator(s.dim, b), x, Family::W)
    })
}

/// `Π_α (z_α - w_α)^{e_α}`.
fn shifted_monomial(dim: usize, x: &Monomial) -> Poly {
    let mut out = Poly::one(dim);
    for &(v, e) in x.pairs() {
        let d = &Poly::var(dim, Var::new(Family::Z, v.index))
            - &Poly::var(dim, Var::new(Family::W, v.index));
        out = &out * &d.pow(e);
    }
    out
}

/// Both sides of the Borcherds identity with kernel `f`, restricted to singular parts and
/// to harmonic degree `w` in both variables.
fn borcherds_sides(
    s: &VLAStructure,
    l: u32,
    f: &KernelMonomial,
    w: i64,
    (a, b, c): (usize, usize, usize),
) -> (ConeForm, ConeForm) {
    let dim = s.dim;
    let r = s.rank();
    let both = [Family::Z, Family::W];
    let top = w - 2;
    let window = |form: ConeForm| form.singular_in(&both).harmonic_window(&both, w as u32);

    // Left: a(z) b(w) c ι_{z,w}F - b(w) a(z) c ι_{w,z}F.
    let mut lhs = ConeForm::zero(dim, &both);
    let first = nested_zw(s, a, b, c);
    if let Some(dmin) = first.min_degree(Family::W) {
        let k = iota_kernel_form(f, Side::ZW, None, Some(top - dmin));
        lhs = lhs.add(&first.mul_scalar_form(&k, |_| true));
    }
    let second = nested_wz(s, a, b, c);
    if let Some(dmin) = second.min_degree(Family::Z) {
        let k = iota_kernel_form(f, Side::WZ, Some(top - dmin), None);
        lhs = lhs.sub(&second.mul_scalar_form(&k, |_| true));
    }

    // Right: (z²)^{-L} [((u+z-w)²)^L (ι_{z,w} - ι_{w,z})(a(z-w)_{s.p.} b)(u)_{s.p.} c F]_{u=w}.
    let mut rhs = ConeForm::zero(dim, &both);
    for ((sh, g), p) in s.forms[a * r + b].terms() {
        for (xm, q) in p.coefficients_in(Family::Z) {
            let e = ModuleElement::from_coords(dim, [(*g, q)]).expect("T-polynomial");
            // e(u)_{s.p.} c, already evaluated at u = w.
            let ec = s.extend_form(&e, &ModuleElement::generator(dim, c), Family::W);
            let Some(dmin) = ec.min_degree(Family::W) else {
                continue;
            };
            let ec = ec.with_family(Family::Z);
            let h = &shifted_monomial(dim, &xm)
                * &Poly::monomial(
                    dim,
                    Monomial::from_exponents(Family::Z, &f.z_exp)
                        .mul(&Monomial::from_exponents(Family::W, &f.w_exp)),
                    Rational::from_integer(1.into()),
                );
            let n = sh[0] + f.zw_pow;
            let zw = kernel_form(dim, n, &h, Side::ZW, top - dmin - 2 * f.w2_pow);
            let wz = kernel_form(dim, n, &h, Side::WZ, top - 2 * f.z2_pow);
            let kernel = zw
                .sub(&wz)
                .shift(Family::Z, f.z2_pow)
                .shift(Family::W, f.w2_pow);
            rhs = rhs.add(&ec.mul_scalar_form(&kernel, |_| true));
        }
    }
    // ((u+z-w)²)^L at u = w is (z²)^L, which the prefactor (z²)^{-L} then removes.
    let rhs = rhs.shift(Family::Z, l as i64).shift(Family::Z, -(l as i64));
    (window(lhs), window(rhs))
}

fn require_l(s: &VLAStructure, l: u32) -> Result<()> {
    let n = s.max_pole_order();
    if l < n {
        return Err(Error::Precondition(format!(
            "L = {l} is below the pole order N = {n}"
        )));
    }
    Ok(())
}

fn triples(r: usize) -> Vec<(usize, usize, usize)> {
    (0..r)
        .flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
        .collect()
}

fn run_triples(
    s: &VLAStructure,
    axiom: &str,
    l: u32,
    f: &KernelMonomial,
    window: u32,
) -> Result<CheckReport> {
    require_l(s, l)?;
    if f.dim() != s.dim {
        return Err(Error::Argument(format!(
            "kernel has {} components, structure has D = {}",
            f.dim(),
            s.dim
        )));
    }
    let w = effective_window(s.dim, window);
    let all = triples(s.rank());
    let results: Vec<Option<String>> = all
        .par_iter()
        .map(|&t| {
            let (lhs, rhs) = borcherds_sides(s, l, f, w, t);
            first_difference(&lhs, &rhs, &s.generators)
        })
        .collect();
    let mut report = CheckReport::new(axiom);
    for ((a, b, c), wit) in all.into_iter().zip(results) {
        let names = [a, b, c].iter().map(|&i| s.generators[i].clone()).collect();
        report.push(names, wit);
    }
    Ok(report)
}

/// `[a(z)_{s.p.}, b(w)_{s.p.}] c` against the ι-antisymmetrized right side, for all triples.
pub fn jacobi_check_vla(s: &VLAStructure, l: u32, window: u32) -> Result<CheckReport> {
    run_triples(s, "vla-jacobi", l, &KernelMonomial::one(s.dim), window)
}

/// The Borcherds identity with kernel `f` on singular parts of both sides.
pub fn borcherds_check(
    s: &VLAStructure,
    l: u32,
    f: &KernelMonomial,
    window: u32,
) -> Result<CheckReport> {
    f.check()?;
    run_triples(s, "borcherds", l, f, window)
}

/// Reads a one-variable λ-bracket table as singular action data:
/// `[a_λ b] = Σ_j λ^j c_j / j!` gives `a(z)_{s.p.} b = Σ_j c_j z^{-j-1}`.
pub fn d1_bridge(table: &BracketTable) -> Result<VLAStructure> {
    if table.dim() != 1 {
        return Err(Error::Domain(format!(
            "the one-variable dictionary needs D = 1, got D = {}",
            table.dim()
        )));
    }
    let mut actions = Vec::with_capacity(table.rank() * table.rank());
    for (_, entry) in table.entries() {
        let products = jth_from_lambda(entry)?;
        let coeffs = products
            .products()
            .iter()
            .map(|(j, c)| (ConeIndex::from_laurent(-(*j as i64) - 1), c.clone()));
        actions.push(ConeSeries::exact(1, coeffs)?);
    }
    VLAStructure::new(1, table.generators().to_vec(), actions)
}

impl fmt::Display for VLAStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D = {}, generators {}",
            self.dim,
            self.generators.join(", ")
        )?;
        for ((i, j), s) in self.actions() {
            write!(f, "{}(z){}:", self.generators[i], self.generators[j])?;
            for (idx, c) in s.coeffs() {
                write!(f, " ({})·{idx}", c.display_with(&self.generators))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
