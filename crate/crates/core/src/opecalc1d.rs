//! One-variable formal distribution calculus: j-th products, the delta-function commutator
//! formula and locality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::rational::{binomial, factorial, fmt_rational};
use crate::exactalg::{Family, Monomial, Rational, Var};
use crate::pseudoalg::{LambdaPoly, ModuleElement};

/// The family `a_(j) b`, `j ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JthProductList {
    products: BTreeMap<u32, ModuleElement>,
}

impl JthProductList {
    pub fn new(products: impl IntoIterator<Item = (u32, ModuleElement)>) -> Self {
        JthProductList {
            products: products.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn products(&self) -> &BTreeMap<u32, ModuleElement> {
        &self.products
    }

    pub fn get(&self, j: u32) -> Option<&ModuleElement> {
        self.products.get(&j)
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }
}

/// `Σ_j c_j ∂_w^j δ(z-w) / j!` with module-valued `c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DeltaDistribution {
    parts: BTreeMap<u32, ModuleElement>,
}

impl DeltaDistribution {
    pub fn new(parts: impl IntoIterator<Item = (u32, ModuleElement)>) -> Self {
        DeltaDistribution {
            parts: parts.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn parts(&self) -> &BTreeMap<u32, ModuleElement> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The coefficients read back as j-th products.
    pub fn to_jth_products(&self) -> JthProductList {
        JthProductList::new(self.parts.clone())
    }
}

impl fmt::Display for DeltaDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, c)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·∂^{j}δ/{j}!")?;
        }
        Ok(())
    }
}

fn require_one_variable(dim: usize) -> Result<()> {
    if dim != 1 {
        return Err(Error::Domain(format!(
            "formal distributions in one variable need D = 1, got D = {dim}"
        )));
    }
    Ok(())
}

/// `a_(j) b = j! · [λ^j] [a_λ b]`.
pub fn jth_from_lambda(l: &LambdaPoly) -> Result<JthProductList> {
    require_one_variable(l.dim())?;
    let mut products = BTreeMap::new();
    for (m, x) in l.lambda_terms() {
        let j = m.exponent(Var::new(Family::Lambda, 0));
        if m.degree() != j {
            return Err(Error::Domain(format!(
                "{m} is not a power of λ; only λ may appear besides T"
            )));
        }
        products.insert(j, x.scale(&factorial(j)));
    }
    Ok(JthProductList::new(products))
}

/// `Σ_j λ^j a_(j) b / j!`.
pub fn lambda_from_jth(list: &JthProductList) -> LambdaPoly {
    let terms = list.products.iter().map(|(j, x)| {
        let m = Monomial::from_pairs([(Var::new(Family::Lambda, 0), *j)]);
        (
            m,
            x.scale(&(Rational::from_integer(1.into()) / factorial(*j))),
        )
    });
    LambdaPoly::from_lambda_terms(1, terms).expect("one-variable λ-polynomial")
}

/// The commutator `[a(z), b(w)] = Σ_j (a_(j) b)(w) ∂_w^j δ(z-w) / j!`.
pub fn commutator_from_lambda(l: &LambdaPoly) -> Result<DeltaDistribution> {
    Ok(DeltaDistribution::new(jth_from_lambda(l)?.products))
}

/// Multiplies by `(z-w)^n` using `(z-w) ∂^j δ / j! = ∂^{j-1} δ / (j-1)!` and `(z-w) δ = 0`.
pub fn delta_mul_pow(dist: &DeltaDistribution, n: u32) -> DeltaDistribution {
    DeltaDistribution::new(
        dist.parts
            .iter()
            .filter(|(j, _)| **j >= n)
            .map(|(j, c)| (j - n, c.clone())),
    )
}

/// Least `N` with `(z-w)^N · dist = 0`.
pub fn locality_check(dist: &DeltaDistribution) -> u32 {
    dist.parts.keys().next_back().map_or(0, |j| j + 1)
}

/// A monomial `coeff · w^exponent` with a possibly negative exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMonomial {
    pub coeff: Rational,
    pub exponent: i64,
}

impl fmt::Display for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        match self.exponent {
            0 => write!(f, "{}", fmt_rational(&self.coeff)),
            e => write!(f, "{}*w^{e}", fmt_rational(&self.coeff)),
        }
    }
}

/// `Res_z z^n ∂_w^j δ(z-w) / j! = C(n, j) w^{n-j}`.
pub fn delta_pair(n: i64, j: u32) -> WMonomial {
    WMonomial {
        coeff: binomial(n, j),
        exponent: n - j as i64,
    }
}
