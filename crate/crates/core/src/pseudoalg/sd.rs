use rayon::prelude::*;

use super::{bracket_extend, build_wd, BracketTable, ModuleElement};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{echelon_basis, Matrix};
use crate::exactalg::{Family, Monomial, Poly, Rational, Var};
use crate::report::CheckReport;

/// The character `χ ∈ ℚ^D` defining `S(D, χ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChiVector(Vec<Rational>);

impl ChiVector {
    pub fn new(values: Vec<Rational>) -> Self {
        ChiVector(values)
    }

    pub fn zero(dim: usize) -> Self {
        ChiVector(vec![Rational::from_integer(0.into()); dim])
    }

    /// The unit vector `e_{index+1}`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = vec![Rational::from_integer(0.into()); dim];
        v[index] = Rational::from_integer(1.into());
        ChiVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

/// `Σ_α P_α(T) (T_α + χ_α)` for `x = Σ_α P_α(T) L^α ∈ W(D)`.
///
/// `x` lies in `S(D, χ)` exactly when the result vanishes. Divergence is the right
/// `ℚ[T]`-linear pairing with `T + χ`, which makes `S(D, χ)` a submodule; see the crate
/// README for the convention.
pub fn sd_divergence(table: &BracketTable, x: &ModuleElement, chi: &ChiVector) -> Result<Poly> {
    let dim = table.dim();
    if dim == 0 || *table != build_wd(dim)? {
        return Err(Error::Domain("divergence is defined on W(D) only".into()));
    }
    if chi.dim() != dim {
        return Err(Error::Domain(format!(
            "χ has {} components, expected {dim}",
            chi.dim()
        )));
    }
    table.check_element(x)?;
    Ok(divergence(x, chi))
}

fn divergence(x: &ModuleElement, chi: &ChiVector) -> Poly {
    let dim = x.dim();
    let mut out = Poly::zero(dim);
    for (a, p) in x.coords() {
        let factor = &Poly::var(dim, Var::new(Family::T, *a))
            + &Poly::constant(dim, chi.values()[*a].clone());
        out.add_assign_ref(&(p * &factor));
    }
    out
}

/// T-monomials of total degree at most `deg`, ascending.
fn monomials_up_to(dim: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            for a in 0..dim {
                let n = m.mul(&Monomial::var(Var::new(Family::T, a)));
                if !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Echelon basis of the divergence-free elements of `W(D)` with T-degree at most `degmax`.
pub fn divergence_free_basis(
    dim: usize,
    chi: &ChiVector,
    degmax: u32,
) -> Result<Vec<ModuleElement>> {
    if dim == 0 || chi.dim() != dim {
        return Err(Error::Argument(format!(
            "χ has {} components for D = {dim}",
            chi.dim()
        )));
    }
    let monos = monomials_up_to(dim, degmax);
    // Columns: (generator, monomial), leading monomials first so the echelon basis is
    // normalized on its highest terms.
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for m in monos.iter().rev() {
        for a in 0..dim {
            columns.push((a, m.clone()));
        }
    }
    let images: Vec<Poly> = columns
        .iter()
        .map(|(a, m)| {
            let x = ModuleElement::from_coords(
                dim,
                [(
                    *a,
                    Poly::monomial(dim, m.clone(), Rational::from_integer(1.into())),
                )],
            )
            .expect("T-monomial");
            divergence(&x, chi)
        })
        .collect();
    let rows: Vec<Monomial> = {
        let mut r: Vec<Monomial> = images
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect();
        r.sort();
        r.dedup();
        r
    };
    let mut mat = Matrix::zeros(rows.len(), columns.len());
    for (c, img) in images.iter().enumerate() {
        for (m, v) in img.terms() {
            let r = rows.binary_search(m).expect("row monomial");
            mat.set(r, c, v.clone());
        }
    }
    let kernel = if rows.is_empty() {
        (0..columns.len())
            .map(|c| {
                let mut v = vec![Rational::from_integer(0.into()); columns.len()];
                v[c] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        mat.kernel()
    };
    let basis = echelon_basis(kernel);
    Ok(basis
        .into_iter()
        .map(|v| {
            let coords = v
                .iter()
                .zip(&columns)
                .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
                .map(|(c, (a, m))| (*a, Poly::monomial(dim, m.clone(), c.clone())));
            ModuleElement::from_coords(dim, coords).expect("T-polynomial coordinates")
        })
        .collect())
}

/// Checks that `S(D, χ)` is closed under the `W(D)` bracket on all pairs of basis elements
/// of T-degree at most `degmax`: every λ-coefficient of every bracket must be divergence-free.
pub fn sd_closure_check(dim: usize, chi: &ChiVector, degmax: u32) -> Result<CheckReport> {
    if degmax < 1 {
        return Err(Error::Argument("degmax must be at least 1".into()));
    }
    let table = build_wd(dim)?;
    let basis = divergence_free_basis(dim, chi, degmax)?;
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect();
    let witnesses: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let br = bracket_extend(&table, &basis[i], &basis[j]).expect("basis elements of W(D)");
            br.lambda_terms().into_iter().find_map(|(m, x)| {
                let d = divergence(&x, chi);
                (!d.is_zero()).then(|| {
                    format!(
                        "coefficient of {m} is {} with divergence {d}",
                        x.display_with(table.generators())
                    )
                })
            })
        })
        .collect();
    let mut report = CheckReport::new("closure");
    for ((i, j), w) in pairs.into_iter().zip(witnesses) {
        report.push(vec![format!("s{}", i + 1), format!("s{}", j + 1)], w);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(dim: usize, a: usize) -> Poly {
        Poly::var(dim, Var::new(Family::T, a))
    }

    #[test]
    fn closure_small_cases() {
        for (dim, chi) in [
            (2, ChiVector::zero(2)),
            (2, ChiVector::unit(2, 0)),
            (1, ChiVector::zero(1)),
        ] {
            let r = sd_closure_check(dim, &chi, 2).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn divergence_examples() {
        let w2 = build_wd(2).unwrap();
        let x = ModuleElement::from_coords(2, [(0, t(2, 1)), (1, -&t(2, 0))]).unwrap();
        assert!(sd_divergence(&w2, &x, &ChiVector::zero(2))
            .unwrap()
            .is_zero());
        assert_eq!(
            sd_divergence(&w2, &x, &ChiVector::unit(2, 0)).unwrap(),
            t(2, 1)
        );
    }
}
