use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::rational::int;
use crate::exactalg::Rational;

/// A finite-dimensional Lie algebra given by structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`.
///
/// Antisymmetry and the Jacobi identity are verified when the structure is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieStructure {
    names: Vec<String>,
    consts: BTreeMap<(usize, usize, usize), Rational>,
}

impl LieStructure {
    pub fn new(
        names: Vec<String>,
        consts: impl IntoIterator<Item = ((usize, usize, usize), Rational)>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Construction(
                "a Lie algebra needs at least one basis vector".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for ((i, j, k), c) in consts {
            if i >= n || j >= n || k >= n {
                return Err(Error::Construction(format!(
                    "structure constant index ({i},{j},{k}) out of range"
                )));
            }
            if !c.is_zero() {
                *map.entry((i, j, k)).or_insert_with(Rational::zero) += c;
            }
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        let g = LieStructure { names, consts: map };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != -self.c(j, i, k) {
                        return Err(Error::Construction(format!(
                            "antisymmetry fails: c({i},{j};{k}) = {} but c({j},{i};{k}) = {}",
                            self.c(i, j, k),
                            self.c(j, i, k)
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let Some(m) = self.jacobi_residual(i, j, k) {
                        return Err(Error::Construction(format!(
                            "Jacobi identity fails on ({i},{j},{k}) in component {m}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Component where `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]` is nonzero, if any.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        let n = self.dim();
        (0..n).find(|&m| {
            let mut s = Rational::zero();
            for l in 0..n {
                s += self.c(j, k, l) * self.c(i, l, m);
                s += self.c(k, i, l) * self.c(j, l, m);
                s += self.c(i, j, l) * self.c(k, l, m);
            }
            !s.is_zero()
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        self.consts
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constants(&self) -> &BTreeMap<(usize, usize, usize), Rational> {
        &self.consts
    }

    /// `sl_2` in the basis `(e, h, f)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let (e, h, f) = (0, 1, 2);
        LieStructure::new(
            vec!["e".into(), "h".into(), "f".into()],
            [
                ((e, f, h), int(1)),
                ((f, e, h), int(-1)),
                ((h, e, e), int(2)),
                ((e, h, e), int(-2)),
                ((h, f, f), int(-2)),
                ((f, h, f), int(2)),
            ],
        )
        .expect("sl2 is a Lie algebra")
    }

    pub fn abelian(n: usize) -> Result<Self> {
        LieStructure::new((1..=n).map(|i| format!("x{i}")).collect(), [])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_is_valid() {
        let g = LieStructure::sl2();
        assert_eq!(g.c(0, 2, 1), int(1));
        assert_eq!(g.dim(), 3);
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let err = LieStructure::new(vec!["a".into(), "b".into()], [((0, 1, 0), int(1))]);
        assert!(matches!(err, Err(Error::Construction(_))));
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [x,y] = y, [x,z] = z, [y,z] = x is antisymmetric but not a Lie algebra.
        let err = LieStructure::new(
            vec!["x".into(), "y".into(), "z".into()],
            [
                ((0, 1, 1), int(1)),
                ((1, 0, 1), int(-1)),
                ((0, 2, 2), int(1)),
                ((2, 0, 2), int(-1)),
                ((1, 2, 0), int(1)),
                ((2, 1, 0), int(-1)),
            ],
        );
        assert!(matches!(err, Err(Error::Construction(_))));
    }

    #[test]
    fn empty_basis_is_rejected() {
        assert!(LieStructure::abelian(0).is_err());
    }
}
