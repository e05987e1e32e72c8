//! Harmonic polynomials and the Gauss decomposition `p = Σ_j (x²)^j h_j`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::exactalg::linalg::{echelon_basis, Matrix};
use crate::exactalg::{Family, Monomial, Poly, Rational, Var};

/// Dimension of the space of harmonic homogeneous polynomials of degree `m` in `dim` variables:
/// `C(m+D-1, D-1) - C(m+D-3, D-1)`.
pub fn h_dim(dim: usize, m: u32) -> usize {
    assert!(dim >= 1, "h_dim needs D >= 1");
    let all = binom(m as usize + dim - 1, dim - 1);
    let lower = if m >= 2 {
        binom(m as usize - 2 + dim - 1, dim - 1)
    } else {
        0
    };
    all - lower
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors of degree `m` in `dim` variables, in descending graded-lex order.
pub fn exponent_vectors(dim: usize, m: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(dim, m, &mut Vec::new(), &mut out);
    out
}

/// Degree-`m` monomials of one family, descending.
pub fn monomials_of_degree(dim: usize, family: Family, m: u32) -> Vec<Monomial> {
    exponent_vectors(dim, m)
        .iter()
        .map(|e| Monomial::from_exponents(family, e))
        .collect()
}

/// Basis `h_{m,1}, …, h_{m,h̃_m}` of degree-`m` harmonic polynomials in the `z` family.
///
/// The basis is the reduced echelon form of the Laplacian kernel with monomials ordered by
/// descending graded-lex: each element has leading coefficient 1 on its pivot monomial and
/// no other element has a term on that pivot. `h_{0,1} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasis {
    dim: usize,
    degree: u32,
    polys: Vec<Poly>,
    pivots: Vec<Monomial>,
}

impl HarmonicBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `h_{m,σ}` with `σ` one based.
    pub fn get(&self, sigma: usize) -> Option<&Poly> {
        sigma.checked_sub(1).and_then(|s| self.polys.get(s))
    }

    /// Pivot (leading) monomials; the σ-coordinate of a harmonic polynomial is its
    /// coefficient on `pivots()[σ-1]`.
    pub fn pivots(&self) -> &[Monomial] {
        &self.pivots
    }

    /// One-based index of the basis element whose pivot is `m`.
    pub fn sigma_of_pivot(&self, m: &Monomial) -> Option<usize> {
        self.pivots.iter().position(|p| p == m).map(|i| i + 1)
    }

    /// The basis element with the given leading monomial in the `z` family, by exponents.
    pub fn sigma_of(&self, exps: &[u32]) -> Option<usize> {
        self.sigma_of_pivot(&Monomial::from_exponents(Family::Z, exps))
    }
}

fn compute_basis(dim: usize, m: u32) -> HarmonicBasis {
    let cols = monomials_of_degree(dim, Family::Z, m);
    let rows = if m >= 2 {
        monomials_of_degree(dim, Family::Z, m - 2)
    } else {
        Vec::new()
    };
    let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..cols.len())
            .map(|c| {
                let mut v = vec![Rational::zero(); cols.len()];
                v[c] = Rational::one();
                v
            })
            .collect()
    } else {
        let mut mat = Matrix::zeros(rows.len(), cols.len());
        for (c, mono) in cols.iter().enumerate() {
            let lap = Poly::monomial(dim, mono.clone(), Rational::one()).laplacian(Family::Z);
            for (rm, v) in lap.terms() {
                let r = rows
                    .iter()
                    .position(|x| x == rm)
                    .expect("degree m-2 monomial");
                mat.set(r, c, v.clone());
            }
        }
        mat.kernel()
    };
    let basis = echelon_basis(kernel);
    let mut polys = Vec::with_capacity(basis.len());
    let mut pivots = Vec::with_capacity(basis.len());
    for v in basis {
        let lead = v
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero basis vector");
        pivots.push(cols[lead].clone());
        polys.push(Poly::from_terms(
            dim,
            v.into_iter()
                .zip(cols.iter().cloned())
                .map(|(c, mono)| (mono, c)),
        ));
    }
    HarmonicBasis {
        dim,
        degree: m,
        polys,
        pivots,
    }
}

type BasisCache = Mutex<HashMap<(usize, u32), Arc<HarmonicBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The echelon harmonic basis of degree `m` in `dim` variables.
pub fn harmonic_basis(dim: usize, m: u32) -> HarmonicBasis {
    cached_basis(dim, m).as_ref().clone()
}

pub(crate) fn cached_basis(dim: usize, m: u32) -> Arc<HarmonicBasis> {
    assert!(dim >= 1, "harmonic_basis needs D >= 1");
    if let Some(b) = basis_cache().lock().expect("cache lock").get(&(dim, m)) {
        return b.clone();
    }
    let b = Arc::new(compute_basis(dim, m));
    basis_cache()
        .lock()
        .expect("cache lock")
        .entry((dim, m))
        .or_insert(b)
        .clone()
}

/// Gauss decomposition of every degree-`d` monomial in the `z` family, as rows of the
/// inverse of the matrix whose columns are `(z²)^j h_{d-2j,σ}`.
struct DegreeSplit {
    /// Index of each degree-d exponent vector.
    index: HashMap<Vec<u32>, usize>,
    /// `parts[r]` lists `(j, harmonic polynomial)` with `z^{e_r} = Σ (z²)^j h`.
    parts: Vec<Vec<(u32, Poly)>>,
}

fn compute_split(dim: usize, d: u32) -> DegreeSplit {
    let exps = exponent_vectors(dim, d);
    let monos: Vec<Monomial> = exps
        .iter()
        .map(|e| Monomial::from_exponents(Family::Z, e))
        .collect();
    let n = monos.len();
    let square = Poly::square(dim, Family::Z);
    let mut columns: Vec<(u32, Poly)> = Vec::with_capacity(n);
    for j in 0..=d / 2 {
        let lift = square.pow(j);
        for h in cached_basis(dim, d - 2 * j).polys() {
            columns.push((j, &lift * h));
        }
    }
    assert_eq!(columns.len(), n, "harmonic dimensions do not add up");
    let mut mat = Matrix::zeros(n, n);
    for (c, (_, p)) in columns.iter().enumerate() {
        for (m, v) in p.terms() {
            let r = monos
                .iter()
                .position(|x| x == m)
                .expect("homogeneous column");
            mat.set(r, c, v.clone());
        }
    }
    let inv = mat.inverse().expect("Gauss decomposition is unique");
    let mut parts = Vec::with_capacity(n);
    for r in 0..n {
        let mut by_j: Vec<(u32, Poly)> = Vec::new();
        for (c, (j, _)) in columns.iter().enumerate() {
            let coeff = inv.get(c, r);
            if coeff.is_zero() {
                continue;
            }
            let h =
                cached_basis(dim, d - 2 * j).polys()[c - column_offset(dim, d, *j)].scale(coeff);
            match by_j.iter_mut().find(|(k, _)| k == j) {
                Some((_, p)) => p.add_assign_ref(&h),
                None => by_j.push((*j, h)),
            }
        }
        by_j.retain(|(_, p)| !p.is_zero());
        parts.push(by_j);
    }
    DegreeSplit {
        index: exps.into_iter().enumerate().map(|(i, e)| (e, i)).collect(),
        parts,
    }
}

fn column_offset(dim: usize, d: u32, j: u32) -> usize {
    (0..j).map(|i| h_dim(dim, d - 2 * i)).sum()
}

type SplitCache = Mutex<HashMap<(usize, u32), Arc<DegreeSplit>>>;

fn split_cache() -> &'static SplitCache {
    static CACHE: OnceLock<SplitCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn degree_split(dim: usize, d: u32) -> Arc<DegreeSplit> {
    if let Some(s) = split_cache().lock().expect("cache lock").get(&(dim, d)) {
        return s.clone();
    }
    let s = Arc::new(compute_split(dim, d));
    split_cache()
        .lock()
        .expect("cache lock")
        .entry((dim, d))
        .or_insert(s)
        .clone()
}

/// Gauss decomposition of the monomial with exponents `exps` in the `z` family.
fn split_monomial(dim: usize, exps: &[u32]) -> Vec<(u32, Poly)> {
    let d: u32 = exps.iter().sum();
    let split = degree_split(dim, d);
    let r = split.index[exps];
    split.parts[r].clone()
}

/// Decomposes `p` as `Σ_j (x²)^j p_j` with every `p_j` harmonic in `family`; the other
/// variables of `p` ride along as coefficients. Entries are sorted by `j` and nonzero.
pub fn gauss_decompose_in(p: &Poly, family: Family) -> Vec<(u32, Poly)> {
    let dim = p.dim();
    let mut acc: Vec<(u32, Poly)> = Vec::new();
    for (inside, rest) in p.coefficients_in(family) {
        let exps = inside.exponents_in(family, dim);
        if exps.iter().sum::<u32>() <= 1 {
            add_part(
                &mut acc,
                0,
                &(&Poly::monomial(dim, inside, Rational::one()) * &rest),
            );
            continue;
        }
        for (j, h) in split_monomial(dim, &exps) {
            let h = if family == Family::Z {
                h
            } else {
                h.rename_family(Family::Z, family)
            };
            add_part(&mut acc, j, &(&h * &rest));
        }
    }
    acc.retain(|(_, q)| !q.is_zero());
    acc.sort_by_key(|(j, _)| *j);
    acc
}

fn add_part(acc: &mut Vec<(u32, Poly)>, j: u32, p: &Poly) {
    match acc.iter_mut().find(|(k, _)| *k == j) {
        Some((_, q)) => q.add_assign_ref(p),
        None => acc.push((j, p.clone())),
    }
}

/// Gauss decomposition in the `z` family.
pub fn gauss_decompose(p: &Poly) -> Vec<(u32, Poly)> {
    gauss_decompose_in(p, Family::Z)
}

/// `Σ_j (x²)^j p_j`.
pub fn gauss_reconstruct(dim: usize, family: Family, parts: &[(u32, Poly)]) -> Poly {
    let square = Poly::square(dim, family);
    let mut out = Poly::zero(dim);
    for (j, p) in parts {
        out.add_assign_ref(&(&square.pow(*j) * p));
    }
    out
}

/// The `z`-variable of index `a` (zero based).
pub fn zvar(dim: usize, a: usize) -> Poly {
    Poly::var(dim, Var::new(Family::Z, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn kernel_rank(dim: usize, m: u32) -> usize {
        let cols = monomials_of_degree(dim, Family::Z, m);
        if m < 2 {
            return cols.len();
        }
        let rows = monomials_of_degree(dim, Family::Z, m - 2);
        let mut mat = Matrix::zeros(rows.len(), cols.len());
        for (c, mono) in cols.iter().enumerate() {
            let lap = Poly::monomial(dim, mono.clone(), Rational::one()).laplacian(Family::Z);
            for (rm, v) in lap.terms() {
                mat.set(rows.iter().position(|x| x == rm).unwrap(), c, v.clone());
            }
        }
        cols.len() - mat.rank()
    }

    #[test]
    fn h_dim_examples() {
        assert_eq!(h_dim(1, 2), 0);
        assert_eq!(h_dim(3, 2), 5);
        assert_eq!(h_dim(2, 0), 1);
        assert_eq!(kernel_rank(1, 2), 0);
        assert_eq!(kernel_rank(3, 2), 5);
    }

    #[test]
    fn basis_examples() {
        let b = harmonic_basis(2, 1);
        assert_eq!(b.polys(), &[zvar(2, 0), zvar(2, 1)]);
        let b = harmonic_basis(2, 2);
        let z1 = zvar(2, 0);
        let z2 = zvar(2, 1);
        assert_eq!(b.polys(), &[&z1.pow(2) - &z2.pow(2), &z1 * &z2]);
        assert_eq!(harmonic_basis(1, 0).polys(), &[Poly::one(1)]);
        assert_eq!(harmonic_basis(1, 1).polys(), &[zvar(1, 0)]);
        assert!(harmonic_basis(1, 2).is_empty());
        assert!(harmonic_basis(1, 5).is_empty());
    }

    #[test]
    fn decompose_examples() {
        let z1 = zvar(2, 0);
        let z2 = zvar(2, 1);
        let sq = Poly::square(2, Family::Z);
        assert_eq!(gauss_decompose(&sq), vec![(1, Poly::one(2))]);
        let got = gauss_decompose(&z1.pow(2));
        assert_eq!(
            got,
            vec![
                (0, (&z1.pow(2) - &z2.pow(2)).scale(&rat(1, 2))),
                (1, Poly::constant(2, rat(1, 2)))
            ]
        );
        let h = &z1 * &z2;
        assert_eq!(gauss_decompose(&h), vec![(0, h.clone())]);
        assert!(gauss_decompose(&Poly::zero(2)).is_empty());
    }

    #[test]
    fn decompose_with_spectators() {
        let dim = 2;
        let t = Poly::var(dim, Var::new(Family::T, 0));
        let w1 = Poly::var(dim, Var::new(Family::W, 0));
        let p = &(&w1.pow(2) * &t) + &Poly::constant(dim, int(3));
        let parts = gauss_decompose_in(&p, Family::W);
        assert_eq!(gauss_reconstruct(dim, Family::W, &parts), p);
        for (_, h) in &parts {
            assert!(h.laplacian(Family::W).is_zero());
        }
    }
}
