use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Named families of vector variables. Every family has one component per space dimension.
///
/// The declaration order is the variable order used by the graded-lex monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T,
    Lambda,
    Mu,
    Nu,
    Z,
    W,
    U,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::T,
        Family::Lambda,
        Family::Mu,
        Family::Nu,
        Family::Z,
        Family::W,
        Family::U,
    ];

    /// Symbol used when printing polynomials.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::Lambda => "λ",
            Family::Mu => "μ",
            Family::Nu => "ν",
            Family::Z => "z",
            Family::W => "w",
            Family::U => "u",
        }
    }

    /// ASCII name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::Lambda => "lambda",
            Family::Mu => "mu",
            Family::Nu => "nu",
            Family::Z => "z",
            Family::W => "w",
            Family::U => "u",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name || f.symbol() == name)
    }
}

/// One component of a vector variable, `index` is zero based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn new(family: Family, index: usize) -> Self {
        Var { family, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index + 1)
    }
}

/// A workspace: the number of space dimensions and the variable families in use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    dim: usize,
    families: Vec<Family>,
}

impl VarSpace {
    pub fn new(dim: usize, families: &[Family]) -> Result<Self> {
        let mut seen = Vec::new();
        for f in families {
            if seen.contains(f) {
                return Err(Error::Workspace(format!(
                    "family {} listed twice",
                    f.name()
                )));
            }
            seen.push(*f);
        }
        Ok(VarSpace {
            dim,
            families: seen,
        })
    }

    /// A space of dimension `dim` with every family available.
    pub fn full(dim: usize) -> Self {
        VarSpace {
            dim,
            families: Family::ALL.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn contains(&self, v: Var) -> bool {
        v.index < self.dim && self.families.contains(&v.family)
    }

    pub fn var(&self, family: Family, index: usize) -> Result<Poly> {
        let v = Var::new(family, index);
        if !self.contains(v) {
            return Err(Error::Workspace(format!(
                "variable {}{} is not in the workspace (dim {})",
                family.name(),
                index + 1,
                self.dim
            )));
        }
        Ok(Poly::var(self.dim, v))
    }

    /// Checks that every variable of `p` belongs to this space.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::Workspace(format!(
                "polynomial of dimension {} used in a workspace of dimension {}",
                p.dim(),
                self.dim
            )));
        }
        for v in p.variables() {
            if !self.contains(v) {
                return Err(Error::Workspace(format!("unknown variable {v}")));
            }
        }
        Ok(())
    }
}

/// A monomial stored as a sorted list of (variable, positive exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from (variable, exponent) pairs in any order; zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// Monomial `x_1^{e_1} ... x_D^{e_D}` in one family.
    pub fn from_exponents(family: Family, exps: &[u32]) -> Self {
        Monomial::from_pairs(
            exps.iter()
                .enumerate()
                .map(|(i, &e)| (Var::new(family, i), e)),
        )
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, family: Family) -> u32 {
        self.exps
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// Exponent vector of one family, length `dim`.
    pub fn exponents_in(&self, family: Family, dim: usize) -> Vec<u32> {
        let mut out = vec![0; dim];
        for &(v, e) in &self.exps {
            if v.family == family && v.index < dim {
                out[v.index] = e;
            }
        }
        out
    }

    pub fn max_index(&self) -> Option<usize> {
        self.exps.iter().map(|(v, _)| v.index).max()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = self.exps[i];
            let (b, eb) = other.exps[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// Splits into the part in `family` and the rest.
    pub fn split_family(&self, family: Family) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.exps.iter().partition(|(v, _)| v.family == family);
        (Monomial { exps: inside }, Monomial { exps: outside })
    }

    /// Lowers the exponent of `v` by one; `None` if `v` does not occur.
    fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.exps.iter().position(|(w, _)| *w == v)?;
        let e = self.exps[pos].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 -= 1;
        }
        Some((e, Monomial { exps }))
    }

    fn map_vars(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials with no zero coefficients,
/// so two polynomials are equal exactly when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Images of variables under a ring homomorphism. Unlisted variables map to themselves.
pub type Substitution = BTreeMap<Var, Poly>;

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Poly::monomial(dim, Monomial::one(), c)
    }

    pub fn monomial(dim: usize, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { dim, terms }
    }

    /// The variable `v` as a polynomial. Panics if `v.index >= dim`.
    pub fn var(dim: usize, v: Var) -> Self {
        assert!(v.index < dim, "variable {v} outside dimension {dim}");
        Poly::monomial(dim, Monomial::var(v), Rational::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `x_1 y_1 + ... + x_D y_D`.
    pub fn dot(dim: usize, a: Family, b: Family) -> Self {
        Poly::from_terms(
            dim,
            (0..dim).map(|i| {
                (
                    Monomial::var(Var::new(a, i)).mul(&Monomial::var(Var::new(b, i))),
                    Rational::one(),
                )
            }),
        )
    }

    /// The quadric `x² = x_1 x_1 + ... + x_D x_D`.
    pub fn square(dim: usize, family: Family) -> Self {
        Poly::dot(dim, family, family)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn families(&self) -> Vec<Family> {
        let mut fs: Vec<Family> = self.variables().into_iter().map(|v| v.family).collect();
        fs.dedup();
        fs
    }

    pub fn involves(&self, family: Family) -> bool {
        self.terms
            .keys()
            .any(|m| m.pairs().iter().any(|(v, _)| v.family == family))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, family: Family) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(family)).max()
    }

    pub fn min_degree_in(&self, family: Family) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(family)).min()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(m) = m.max_index() {
            assert!(
                m < self.dim,
                "monomial index outside dimension {}",
                self.dim
            );
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_space(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Workspace(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *terms.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly {
            dim: self.dim,
            terms,
        })
    }

    /// `self += other`. Panics on a dimension mismatch.
    pub fn add_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, d)| (k.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Formal partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Result<Poly> {
        if v.index >= self.dim {
            return Err(Error::Workspace(format!(
                "unknown variable {v} in dimension {}",
                self.dim
            )));
        }
        Ok(self.diff_unchecked(v))
    }

    pub(crate) fn diff_unchecked(&self, v: Var) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.add_term(lowered, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Repeated derivative `∂^{exps}` in one family.
    pub fn diff_multi(&self, family: Family, exps: &[u32]) -> Poly {
        let mut out = self.clone();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = out.diff_unchecked(Var::new(family, i));
            }
        }
        out
    }

    /// Sum of second derivatives over the components of `family`.
    pub fn laplacian(&self, family: Family) -> Poly {
        let mut out = Poly::zero(self.dim);
        for i in 0..self.dim {
            let v = Var::new(family, i);
            out.add_assign_ref(&self.diff_unchecked(v).diff_unchecked(v));
        }
        out
    }

    /// Ring homomorphism sending each listed variable to its image.
    pub fn subst(&self, assignment: &Substitution) -> Result<Poly> {
        for (v, image) in assignment {
            if v.index >= self.dim {
                return Err(Error::Workspace(format!("unknown variable {v}")));
            }
            self.same_space(image)?;
        }
        Ok(self.subst_unchecked(assignment))
    }

    pub(crate) fn subst_unchecked(&self, assignment: &Substitution) -> Poly {
        let mut powers: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::one(self.dim);
            for &(v, e) in m.pairs() {
                match assignment.get(&v) {
                    None => kept.push((v, e)),
                    Some(image) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e)).clone();
                        factor = &factor * &pw;
                    }
                }
            }
            let kept = Monomial::from_pairs(kept);
            out.add_assign_ref(&factor.mul_monomial(&kept, c));
        }
        out
    }

    /// Renames every variable of family `from` to the same component of `to`.
    pub fn rename_family(&self, from: Family, to: Family) -> Poly {
        Poly::from_terms(
            self.dim,
            self.terms.iter().map(|(m, c)| {
                (
                    m.map_vars(|v| {
                        if v.family == from {
                            Var::new(to, v.index)
                        } else {
                            v
                        }
                    }),
                    c.clone(),
                )
            }),
        )
    }

    /// The same polynomial viewed in a space with more dimensions.
    pub fn embed(&self, dim: usize) -> Result<Poly> {
        if dim < self.dim {
            return Err(Error::Workspace(format!(
                "cannot embed dimension {} into {}",
                self.dim, dim
            )));
        }
        Ok(Poly {
            dim,
            terms: self.terms.clone(),
        })
    }

    /// Keeps the terms for which `keep` returns true.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by their monomial in `family`; the values carry the remaining variables.
    pub fn coefficients_in(&self, family: Family) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split_family(family);
            out.entry(inside)
                .or_insert_with(|| Poly::zero(self.dim))
                .add_term(outside, c.clone());
        }
        out
    }

    /// Evaluates every variable at a rational point; unlisted variables are left symbolic.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Poly {
        let assignment: Substitution = point
            .iter()
            .map(|(v, r)| (*v, Poly::constant(self.dim, r.clone())))
            .collect();
        self.subst_unchecked(&assignment)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands have different dimensions; use the `try_` form to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomial operands in different workspaces")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn t(i: usize) -> Poly {
        Poly::var(2, Var::new(Family::T, i))
    }
    fn v(f: Family, i: usize, dim: usize) -> Poly {
        Poly::var(dim, Var::new(f, i))
    }

    #[test]
    fn add_examples() {
        assert!((&t(0) + &(-&t(0))).is_zero());
        let s = &t(0) + &v(Family::Lambda, 0, 2);
        assert_eq!(s.len(), 2);
        let half_sq = t(0).pow(2).scale(&rat(1, 2));
        assert_eq!(&half_sq + &half_sq, t(0).pow(2));
    }

    #[test]
    fn mul_examples() {
        let p = &t(0) + &v(Family::Lambda, 0, 2);
        assert_eq!(&p * &Poly::one(2), p);
        let z = v(Family::Z, 0, 2);
        let w = v(Family::W, 0, 2);
        assert_eq!(&(&z - &w) * &(&z + &w), &z.pow(2) - &w.pow(2));
        assert!((&Poly::zero(2) * &p).is_zero());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = Poly::var(1, Var::new(Family::T, 0));
        let b = Poly::var(2, Var::new(Family::T, 0));
        assert!(matches!(a.try_add(&b), Err(Error::Workspace(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::Workspace(_))));
    }

    #[test]
    fn diff_examples() {
        let t1 = Var::new(Family::T, 0);
        let t2 = Var::new(Family::T, 1);
        assert_eq!(t(0).pow(2).diff(t1).unwrap(), t(0).scale(&int(2)));
        assert!(t(0).diff(t2).unwrap().is_zero());
        let z2 = Poly::square(2, Family::Z);
        assert_eq!(
            z2.diff(Var::new(Family::Z, 0)).unwrap(),
            v(Family::Z, 0, 2).scale(&int(2))
        );
        assert!(matches!(
            t(0).diff(Var::new(Family::T, 5)),
            Err(Error::Workspace(_))
        ));
    }

    #[test]
    fn subst_examples() {
        let mu = v(Family::Mu, 0, 1);
        let t1 = v(Family::T, 0, 1);
        let l1 = v(Family::Lambda, 0, 1);
        let mut s = Substitution::new();
        s.insert(Var::new(Family::Mu, 0), -&(&t1 + &l1));
        let got = mu.pow(2).subst(&s).unwrap();
        let want = &(&t1.pow(2) + &(&t1 * &l1).scale(&int(2))) + &l1.pow(2);
        assert_eq!(got, want);

        let mut shift = Substitution::new();
        shift.insert(Var::new(Family::T, 0), &t1 + &l1);
        assert_eq!(t1.subst(&shift).unwrap(), &t1 + &l1);

        let p = &(&t1 * &mu) + &l1.pow(3);
        assert_eq!(p.subst(&Substitution::new()).unwrap(), p);
    }

    #[test]
    fn laplacian_examples() {
        let z1 = v(Family::Z, 0, 2);
        let z2 = v(Family::Z, 1, 2);
        assert!((&z1.pow(2) - &z2.pow(2)).laplacian(Family::Z).is_zero());
        assert_eq!(
            Poly::square(2, Family::Z).laplacian(Family::Z),
            Poly::constant(2, int(4))
        );
        let p = &v(Family::Z, 0, 3) * &v(Family::Z, 1, 3);
        assert!(p.laplacian(Family::Z).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let t1 = Monomial::var(Var::new(Family::T, 0));
        let t2 = Monomial::var(Var::new(Family::T, 1));
        let l1 = Monomial::var(Var::new(Family::Lambda, 0));
        assert!(t1 > t2);
        assert!(t2 > l1);
        assert!(t2.mul(&t2) > t1);
        assert!(t1.mul(&t2) > t2.mul(&t2));
        assert!(Monomial::one() < l1);
    }

    #[test]
    fn display_is_leading_term_first() {
        let p = &(&t(0).pow(2) - &t(1)) + &Poly::constant(2, rat(1, 2));
        assert_eq!(p.to_string(), "T1^2 - T2 + 1/2");
    }
}
