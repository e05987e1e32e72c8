use rayon::prelude::*;

use super::{BracketTable, LambdaPoly, ModuleElement};
use crate::error::Result;
use crate::exactalg::{Family, Poly, Substitution, Var};
use crate::report::CheckReport;

fn vector(dim: usize, family: Family) -> Vec<Poly> {
    (0..dim)
        .map(|a| Poly::var(dim, Var::new(family, a)))
        .collect()
}

fn subst_t(images: &[Poly]) -> Substitution {
    images
        .iter()
        .enumerate()
        .map(|(a, p)| (Var::new(Family::T, a), p.clone()))
        .collect()
}

/// `[x_ν y]` for module-valued `x`, `y` whose coordinates may carry parameters (λ, μ) that
/// commute with everything. The first slot is reduced with `[(P(T)a)_ν b] = P(-ν)[a_ν b]`
/// and the second with `[a_ν (Q(T)b)] = Q(T+ν)[a_ν b]`.
pub(crate) fn bracket_at(
    table: &BracketTable,
    x: &LambdaPoly,
    y: &LambdaPoly,
    nu: &[Poly],
) -> LambdaPoly {
    let dim = table.dim();
    let minus_nu: Vec<Poly> = nu.iter().map(|p| -p).collect();
    let t_plus_nu: Vec<Poly> = vector(dim, Family::T)
        .iter()
        .zip(nu)
        .map(|(t, n)| t + n)
        .collect();
    let left = subst_t(&minus_nu);
    let right = subst_t(&t_plus_nu);
    let mut out = LambdaPoly::zero(dim);
    for (i, p) in x.coords() {
        let p = p.subst_unchecked(&left);
        for (j, q) in y.coords() {
            let q = q.subst_unchecked(&right);
            let entry = table.entry_at(*i, *j, nu);
            if entry.is_zero() {
                continue;
            }
            out = out.add(&entry.mul_poly(&(&p * &q)));
        }
    }
    out
}

/// `[x_λ y]` extended from the generators by sesquilinearity.
pub fn bracket_extend(
    table: &BracketTable,
    x: &ModuleElement,
    y: &ModuleElement,
) -> Result<LambdaPoly> {
    table.check_element(x)?;
    table.check_element(y)?;
    Ok(bracket_at(
        table,
        &LambdaPoly::from_element(x),
        &LambdaPoly::from_element(y),
        &vector(table.dim(), Family::Lambda),
    ))
}

/// `[a_λ b] + [b_{-T-λ} a]` on generators.
pub(crate) fn skew_residual(table: &BracketTable, i: usize, j: usize) -> LambdaPoly {
    let dim = table.dim();
    let nu: Vec<Poly> = vector(dim, Family::T)
        .iter()
        .zip(vector(dim, Family::Lambda))
        .map(|(t, l)| -&(t + &l))
        .collect();
    table.entry(i, j).add(&table.entry_at(j, i, &nu))
}

/// Checks `[a_λ b] = -[b_{-T-λ} a]` on every ordered pair of generators.
pub fn skew_check(table: &BracketTable) -> CheckReport {
    let r = table.rank();
    let names = table.generators();
    let mut report = CheckReport::new("skew");
    for i in 0..r {
        for j in 0..r {
            let res = skew_residual(table, i, j);
            let witness = (!res.is_zero()).then(|| res.display_with(names).to_string());
            report.push(vec![names[i].clone(), names[j].clone()], witness);
        }
    }
    report
}

/// `[a λ [b μ c]] - [b μ [a λ c]] - [[a λ b]_{λ+μ} c]` for arbitrary elements.
pub(crate) fn jacobi_residual_elements(
    table: &BracketTable,
    a: &LambdaPoly,
    b: &LambdaPoly,
    c: &LambdaPoly,
) -> LambdaPoly {
    let dim = table.dim();
    let lambda = vector(dim, Family::Lambda);
    let mu = vector(dim, Family::Mu);
    let sum: Vec<Poly> = lambda.iter().zip(&mu).map(|(l, m)| l + m).collect();
    let bc = bracket_at(table, b, c, &mu);
    let ac = bracket_at(table, a, c, &lambda);
    let ab = bracket_at(table, a, b, &lambda);
    let first = bracket_at(table, a, &bc, &lambda);
    let second = bracket_at(table, b, &ac, &mu);
    let third = bracket_at(table, &ab, c, &sum);
    first.sub(&second).sub(&third)
}

/// Checks the Jacobi identity on every ordered triple of generators.
pub fn jacobi_check(table: &BracketTable) -> CheckReport {
    let r = table.rank();
    let dim = table.dim();
    let names = table.generators();
    let gens: Vec<LambdaPoly> = (0..r)
        .map(|i| LambdaPoly::from_element(&ModuleElement::generator(dim, i)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
        .collect();
    let residuals: Vec<LambdaPoly> = triples
        .par_iter()
        .map(|&(i, j, k)| jacobi_residual_elements(table, &gens[i], &gens[j], &gens[k]))
        .collect();
    let mut report = CheckReport::new("jacobi");
    for ((i, j, k), res) in triples.into_iter().zip(residuals) {
        let witness = (!res.is_zero()).then(|| res.display_with(names).to_string());
        report.push(
            vec![names[i].clone(), names[j].clone(), names[k].clone()],
            witness,
        );
    }
    report
}
