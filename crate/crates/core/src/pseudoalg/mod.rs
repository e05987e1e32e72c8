//! Lie pseudoalgebras over `ℚ[T_1..T_D]` presented by λ-bracket tables on free generators.
//!
//! An element of the module is a [`ModuleElement`]: one `T`-polynomial per generator. A
//! bracket value is a [`LambdaPoly`], whose coordinates may also involve the λ (and, inside
//! the Jacobi check, μ) families. Because the module is free and `T` acts by multiplication,
//! the operator substitutions required by the axioms are ordinary polynomial substitutions.

mod builders;
mod checks;
mod lie;
mod sd;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{Family, Monomial, Poly, Rational, Substitution, Var};

pub use builders::{build_cur, build_hd, build_wd, current_extend};
pub use checks::{bracket_extend, jacobi_check, skew_check};
pub use lie::LieStructure;
pub use sd::{divergence_free_basis, sd_closure_check, sd_divergence, ChiVector};

/// Formats `Σ coord_i · name_i`.
fn fmt_combination(
    f: &mut fmt::Formatter<'_>,
    coords: &BTreeMap<usize, Poly>,
    names: Option<&[String]>,
) -> fmt::Result {
    if coords.is_empty() {
        return write!(f, "0");
    }
    for (k, (i, p)) in coords.iter().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        let name = names
            .and_then(|n| n.get(*i).cloned())
            .unwrap_or_else(|| format!("a{}", i + 1));
        if p.is_one_poly() {
            write!(f, "{name}")?;
        } else if p.len() == 1 {
            write!(f, "{p}*{name}")?;
        } else {
            write!(f, "({p})*{name}")?;
        }
    }
    Ok(())
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}

fn add_coord(coords: &mut BTreeMap<usize, Poly>, i: usize, p: &Poly) {
    if p.is_zero() {
        return;
    }
    match coords.get_mut(&i) {
        Some(q) => {
            q.add_assign_ref(p);
            if q.is_zero() {
                coords.remove(&i);
            }
        }
        None => {
            coords.insert(i, p.clone());
        }
    }
}

/// An element `Σ P_i(T) a_i` of the free `ℚ[T]`-module on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    dim: usize,
    coords: BTreeMap<usize, Poly>,
}

impl ModuleElement {
    pub fn zero(dim: usize) -> Self {
        ModuleElement {
            dim,
            coords: BTreeMap::new(),
        }
    }

    /// The generator `a_i`.
    pub fn generator(dim: usize, i: usize) -> Self {
        ModuleElement::from_coords(dim, [(i, Poly::one(dim))]).expect("constant coordinate")
    }

    /// Builds `Σ P_i a_i`, rejecting coordinates that involve anything other than `T`.
    pub fn from_coords(
        dim: usize,
        coords: impl IntoIterator<Item = (usize, Poly)>,
    ) -> Result<Self> {
        let mut out = ModuleElement::zero(dim);
        for (i, p) in coords {
            if p.dim() != dim {
                return Err(Error::Workspace(format!(
                    "coordinate of dimension {} in a module of dimension {dim}",
                    p.dim()
                )));
            }
            if p.families().iter().any(|f| *f != Family::T) {
                return Err(Error::Workspace(format!(
                    "module coordinate {p} involves variables other than T"
                )));
            }
            add_coord(&mut out.coords, i, &p);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<usize, Poly> {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Poly {
        self.coords
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.coords.keys().next_back().copied()
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        let mut out = self.clone();
        for (i, p) in &other.coords {
            add_coord(&mut out.coords, *i, p);
        }
        out
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ModuleElement {
        let mut out = ModuleElement::zero(self.dim);
        for (i, p) in &self.coords {
            add_coord(&mut out.coords, *i, &p.scale(c));
        }
        out
    }

    /// Multiplies every coordinate by a `T`-polynomial (the module action).
    pub fn mul_poly(&self, p: &Poly) -> Result<ModuleElement> {
        if p.families().iter().any(|f| *f != Family::T) {
            return Err(Error::Workspace(format!("{p} is not a T-polynomial")));
        }
        let mut out = ModuleElement::zero(self.dim);
        for (i, q) in &self.coords {
            add_coord(&mut out.coords, *i, &p.try_mul(q)?);
        }
        Ok(out)
    }

    pub fn embed(&self, dim: usize) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(dim);
        for (i, p) in &self.coords {
            out.coords.insert(*i, p.embed(dim)?);
        }
        Ok(out)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named {
            coords: &self.coords,
            names,
        }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combination(f, &self.coords, None)
    }
}

struct Named<'a> {
    coords: &'a BTreeMap<usize, Poly>,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combination(f, self.coords, Some(self.names))
    }
}

/// A module-valued polynomial in λ, stored generator-wise: `Σ_i c_i(T, λ) a_i`.
///
/// The coordinates may also use μ and ν; those appear in intermediate results of the
/// Jacobi check, which lives in `R[λ, μ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaPoly {
    dim: usize,
    coords: BTreeMap<usize, Poly>,
}

impl LambdaPoly {
    pub fn zero(dim: usize) -> Self {
        LambdaPoly {
            dim,
            coords: BTreeMap::new(),
        }
    }

    pub fn from_coords(
        dim: usize,
        coords: impl IntoIterator<Item = (usize, Poly)>,
    ) -> Result<Self> {
        let mut out = LambdaPoly::zero(dim);
        for (i, p) in coords {
            if p.dim() != dim {
                return Err(Error::Workspace(format!(
                    "coordinate of dimension {} in a bracket of dimension {dim}",
                    p.dim()
                )));
            }
            if p.families()
                .iter()
                .any(|f| !matches!(f, Family::T | Family::Lambda | Family::Mu | Family::Nu))
            {
                return Err(Error::Workspace(format!(
                    "bracket coordinate {p} involves cone variables"
                )));
            }
            add_coord(&mut out.coords, i, &p);
        }
        Ok(out)
    }

    /// Assembles `Σ_K λ^K x_K` from λ-monomials and module elements.
    pub fn from_lambda_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Monomial, ModuleElement)>,
    ) -> Result<Self> {
        let mut out = LambdaPoly::zero(dim);
        for (m, x) in terms {
            if m.pairs().iter().any(|(v, _)| v.family != Family::Lambda) {
                return Err(Error::Workspace(format!("{m} is not a λ-monomial")));
            }
            for (i, p) in x.coords() {
                add_coord(&mut out.coords, *i, &p.mul_monomial(&m, &Rational::one()));
            }
        }
        Ok(out)
    }

    pub fn from_element(x: &ModuleElement) -> Self {
        LambdaPoly {
            dim: x.dim,
            coords: x.coords.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<usize, Poly> {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Poly {
        self.coords
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.coords.keys().next_back().copied()
    }

    /// The coefficients of the λ-monomials, each a module element.
    pub fn lambda_terms(&self) -> BTreeMap<Monomial, ModuleElement> {
        let mut out: BTreeMap<Monomial, ModuleElement> = BTreeMap::new();
        for (i, p) in &self.coords {
            for (m, c) in p.coefficients_in(Family::Lambda) {
                let x = out
                    .entry(m)
                    .or_insert_with(|| ModuleElement::zero(self.dim));
                add_coord(&mut x.coords, *i, &c);
            }
        }
        out
    }

    pub fn lambda_coefficient(&self, m: &Monomial) -> ModuleElement {
        self.lambda_terms()
            .remove(m)
            .unwrap_or_else(|| ModuleElement::zero(self.dim))
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (i, p) in &other.coords {
            add_coord(&mut out.coords, *i, p);
        }
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LambdaPoly {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coordinate by `p` (which may involve T, λ, μ).
    pub fn mul_poly(&self, p: &Poly) -> LambdaPoly {
        self.map(|q| p * q)
    }

    pub fn subst(&self, s: &Substitution) -> LambdaPoly {
        self.map(|p| p.subst_unchecked(s))
    }

    pub fn rename_family(&self, from: Family, to: Family) -> LambdaPoly {
        self.map(|p| p.rename_family(from, to))
    }

    pub fn embed(&self, dim: usize) -> Result<LambdaPoly> {
        let mut out = LambdaPoly::zero(dim);
        for (i, p) in &self.coords {
            out.coords.insert(*i, p.embed(dim)?);
        }
        Ok(out)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> LambdaPoly {
        let mut out = LambdaPoly::zero(self.dim);
        for (i, p) in &self.coords {
            add_coord(&mut out.coords, *i, &f(p));
        }
        out
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named {
            coords: &self.coords,
            names,
        }
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combination(f, &self.coords, None)
    }
}

/// A pseudoalgebra presentation: `[a_i λ a_j]` for every ordered pair of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    generators: Vec<String>,
    entries: Vec<LambdaPoly>,
}

impl BracketTable {
    /// `entries` is row-major: entry `i * r + j` is `[a_i λ a_j]`.
    pub fn new(dim: usize, generators: Vec<String>, entries: Vec<LambdaPoly>) -> Result<Self> {
        let r = generators.len();
        if r == 0 {
            return Err(Error::Construction("no generators".into()));
        }
        let mut sorted = generators.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != r {
            return Err(Error::Construction("duplicate generator names".into()));
        }
        if entries.len() != r * r {
            return Err(Error::Construction(format!(
                "expected {} bracket entries, got {}",
                r * r,
                entries.len()
            )));
        }
        for e in &entries {
            if e.dim() != dim {
                return Err(Error::Construction(format!(
                    "entry of dimension {} in a table of dimension {dim}",
                    e.dim()
                )));
            }
            if e.max_generator().is_some_and(|g| g >= r) {
                return Err(Error::Construction(
                    "entry refers to an unknown generator".into(),
                ));
            }
            if e.coords().values().any(|p| {
                p.families()
                    .iter()
                    .any(|f| !matches!(f, Family::T | Family::Lambda))
            }) {
                return Err(Error::Construction(format!(
                    "bracket entry {e} must involve only T and λ"
                )));
            }
        }
        Ok(BracketTable {
            dim,
            generators,
            entries,
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

    /// `[a_i λ a_j]`.
    pub fn entry(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.entries[i * self.rank() + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &LambdaPoly)> {
        let r = self.rank();
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, e)| ((k / r, k % r), e))
    }

    /// `[a_i ν a_j]` where λ is replaced by the vector `nu` (whose components may involve T).
    pub fn entry_at(&self, i: usize, j: usize, nu: &[Poly]) -> LambdaPoly {
        let s: Substitution = nu
            .iter()
            .enumerate()
            .map(|(a, p)| (Var::new(Family::Lambda, a), p.clone()))
            .collect();
        self.entry(i, j).subst(&s)
    }

    pub(crate) fn check_element(&self, x: &ModuleElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Workspace(format!(
                "element of dimension {} used with a table of dimension {}",
                x.dim(),
                self.dim
            )));
        }
        if x.max_generator().is_some_and(|g| g >= self.rank()) {
            return Err(Error::Workspace(
                "element refers to an unknown generator".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for BracketTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D = {}, generators: {}",
            self.dim,
            self.generators.join(", ")
        )?;
        for ((i, j), e) in self.entries() {
            writeln!(
                f,
                "[{} λ {}] = {}",
                self.generators[i],
                self.generators[j],
                e.display_with(&self.generators)
            )?;
        }
        Ok(())
    }
}
