use num_traits::One;

use super::{BracketTable, LambdaPoly, LieStructure};
use crate::error::{Error, Result};
use crate::exactalg::{Family, Poly, Rational, Var};

fn t(dim: usize, a: usize) -> Poly {
    Poly::var(dim, Var::new(Family::T, a))
}

fn lam(dim: usize, a: usize) -> Poly {
    Poly::var(dim, Var::new(Family::Lambda, a))
}

/// Current pseudoalgebra `ℚ[T] ⊗ g`: `[a_λ b] = [a, b]`, constant in λ and T.
///
/// `dim = 0` gives back the Lie algebra itself.
pub fn build_cur(g: &LieStructure, dim: usize) -> Result<BracketTable> {
    let n = g.dim();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let coords = (0..n)
                .map(|k| (k, Poly::constant(dim, g.c(i, j, k))))
                .filter(|(_, p)| !p.is_zero());
            entries.push(LambdaPoly::from_coords(dim, coords)?);
        }
    }
    BracketTable::new(dim, g.names().to_vec(), entries)
}

/// `W(D)`: `[L^α_λ L^β] = (T_α + λ_α) L^β + λ_β L^α`.
pub fn build_wd(dim: usize) -> Result<BracketTable> {
    if dim < 1 {
        return Err(Error::Argument("W(D) needs D >= 1".into()));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut e = LambdaPoly::from_coords(dim, [(b, &t(dim, a) + &lam(dim, a))])?;
            e = e.add(&LambdaPoly::from_coords(dim, [(a, lam(dim, b))])?);
            entries.push(e);
        }
    }
    let names = (1..=dim).map(|a| format!("L{a}")).collect();
    BracketTable::new(dim, names, entries)
}

/// `H(D)` for even `D`: `[L_λ L] = Σ_{α ≤ D/2} (λ_α T_{α+D/2} - λ_{α+D/2} T_α) L`.
pub fn build_hd(dim: usize) -> Result<BracketTable> {
    if dim < 2 || !dim.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "H(D) needs an even D >= 2, got {dim}"
        )));
    }
    let half = dim / 2;
    let mut coeff = Poly::zero(dim);
    for a in 0..half {
        coeff.add_assign_ref(&(&lam(dim, a) * &t(dim, a + half)));
        coeff.add_scaled(&(&lam(dim, a + half) * &t(dim, a)), &-Rational::one());
    }
    let entry = LambdaPoly::from_coords(dim, [(0, coeff)])?;
    BracketTable::new(dim, vec!["L".into()], vec![entry])
}

/// The current pseudoalgebra over `table` in `target_dim > D` variables: the same brackets,
/// read in the larger polynomial ring.
pub fn current_extend(table: &BracketTable, target_dim: usize) -> Result<BracketTable> {
    if target_dim <= table.dim() {
        return Err(Error::Argument(format!(
            "current extension needs D' > D = {}, got {target_dim}",
            table.dim()
        )));
    }
    let entries = table
        .entries()
        .map(|(_, e)| e.embed(target_dim))
        .collect::<Result<Vec<_>>>()?;
    BracketTable::new(target_dim, table.generators().to_vec(), entries)
}
