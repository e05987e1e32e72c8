//! ι-expansions of kernels in `ℚ[z, w, 1/z², 1/w², 1/(z-w)²]`.

use num_traits::One;

use super::form::ConeForm;
use super::{BiConeSeries, Truncation};
use crate::error::{Error, Result};
use crate::exactalg::rational::{binomial, int};
use crate::exactalg::{Family, Monomial, Poly, Rational};

/// Expansion region: `ZW` expands in `w` (`|w| ≪ |z|`), `WZ` in `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    ZW,
    WZ,
}

impl Side {
    fn expanded(self) -> Family {
        match self {
            Side::ZW => Family::W,
            Side::WZ => Family::Z,
        }
    }

    fn other(self) -> Family {
        match self {
            Side::ZW => Family::Z,
            Side::WZ => Family::W,
        }
    }
}

/// `z^a w^b (z²)^p (w²)^q ((z-w)²)^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelMonomial {
    pub z_exp: Vec<u32>,
    pub w_exp: Vec<u32>,
    pub z2_pow: i64,
    pub w2_pow: i64,
    pub zw_pow: i64,
}

impl KernelMonomial {
    pub fn one(dim: usize) -> Self {
        KernelMonomial {
            z_exp: vec![0; dim],
            w_exp: vec![0; dim],
            z2_pow: 0,
            w2_pow: 0,
            zw_pow: 0,
        }
    }

    /// `((z-w)²)^c`.
    pub fn zw_power(dim: usize, c: i64) -> Self {
        KernelMonomial {
            zw_pow: c,
            ..KernelMonomial::one(dim)
        }
    }

    pub fn dim(&self) -> usize {
        self.z_exp.len()
    }

    pub fn check(&self) -> Result<()> {
        if self.z_exp.len() != self.w_exp.len() || self.z_exp.is_empty() {
            return Err(Error::Argument(
                "kernel exponent vectors must both have length D >= 1".into(),
            ));
        }
        Ok(())
    }

    /// The polynomial prefactor `z^a w^b`.
    fn prefactor(&self) -> Poly {
        let m = Monomial::from_exponents(Family::Z, &self.z_exp)
            .mul(&Monomial::from_exponents(Family::W, &self.w_exp));
        Poly::monomial(self.dim(), m, Rational::one())
    }

    fn degree(&self, family: Family) -> i64 {
        match family {
            Family::Z => self.z_exp.iter().sum::<u32>() as i64 + 2 * self.z2_pow,
            _ => self.w_exp.iter().sum::<u32>() as i64 + 2 * self.w2_pow,
        }
    }
}

/// `ι_side(((z-w)²)^c h(z,w))` keeping monomials of degree at most `bound` in the expanded
/// variable. Exact on that range because every further term has higher degree there.
pub(crate) fn kernel_form(dim: usize, c: i64, h: &Poly, side: Side, bound: i64) -> ConeForm {
    let fams = [Family::Z, Family::W];
    let mut out = ConeForm::zero(dim, &fams);
    if bound < 0 || h.is_zero() {
        return out;
    }
    let (ex, other) = (side.expanded(), side.other());
    let keep = |m: &Monomial| m.degree_in(ex) as i64 <= bound;
    if c >= 0 {
        let diff = &Poly::square(dim, Family::Z) + &Poly::square(dim, Family::W);
        let diff = &diff - &Poly::dot(dim, Family::Z, Family::W).scale(&int(2));
        out.add_poly(&[0, 0], 0, &(&diff.pow(c as u32) * h).filter(keep));
        return out;
    }
    // ((z-w)²)^c = (x²)^c (1 + (y² - 2 z·w)/x²)^c with x the other variable, y the expanded one.
    let step = &Poly::square(dim, ex) - &Poly::dot(dim, Family::Z, Family::W).scale(&int(2));
    let slot = if other == Family::Z { 0 } else { 1 };
    let mut power = Poly::one(dim);
    for t in 0..=bound {
        if power.is_zero() {
            break;
        }
        let mut sh = vec![0, 0];
        sh[slot] = c - t;
        let term = (&power * h).filter(keep).scale(&binomial(c, t as u32));
        out.add_poly(&sh, 0, &term);
        power = (&power * &step).filter(keep);
    }
    out
}

/// `ι_side F` keeping terms of Laurent degree at most `zmax` in `z` and `wmax` in `w`.
/// The expanded variable must be bounded whenever `F` has a `(z-w)²` pole.
pub(crate) fn iota_kernel_form(
    f: &KernelMonomial,
    side: Side,
    zmax: Option<i64>,
    wmax: Option<i64>,
) -> ConeForm {
    let dim = f.dim();
    let ex = side.expanded();
    let ex_max = if ex == Family::Z { zmax } else { wmax };
    // The prefactor is filtered together with the expansion; only the x²-powers shift degrees.
    let bound = match ex_max {
        Some(b) => b - (f.degree(ex) - f.prefactor_degree(ex)),
        None => {
            assert!(
                f.zw_pow >= 0,
                "an unbounded ι-expansion of a pole is infinite"
            );
            i64::MAX / 4
        }
    };
    let mut form = kernel_form(dim, f.zw_pow, &f.prefactor(), side, bound)
        .shift(Family::Z, f.z2_pow)
        .shift(Family::W, f.w2_pow);
    if let Some(z) = zmax {
        form = form.degree_window(Family::Z, z);
    }
    if let Some(w) = wmax {
        form = form.degree_window(Family::W, w);
    }
    form
}

impl KernelMonomial {
    fn prefactor_degree(&self, family: Family) -> i64 {
        match family {
            Family::Z => self.z_exp.iter().sum::<u32>() as i64,
            _ => self.w_exp.iter().sum::<u32>() as i64,
        }
    }
}

fn least_shift(form: &ConeForm, family: Family) -> i64 {
    form.min_shift(family).unwrap_or(0).min(0)
}

/// `ι_side ((z-w)²)^{-k}` with the expanded variable known up to degree `window`.
pub fn iota_expand(dim: usize, k: u32, side: Side, window: u32) -> Result<BiConeSeries> {
    if dim == 0 {
        return Err(Error::Argument("ι-expansions need D >= 1".into()));
    }
    let f = KernelMonomial::zw_power(dim, -(k as i64));
    let w = Some(window as i64);
    let (zmax, wmax) = match side {
        Side::ZW => (None, w),
        Side::WZ => (w, None),
    };
    let form = iota_kernel_form(&f, side, zmax, wmax);
    let trunc = |fam: Family, max: Option<i64>| Truncation {
        n_min: least_shift(&form, fam),
        max_degree: max,
    };
    Ok(BiConeSeries::from_form(
        &form,
        [trunc(Family::Z, zmax), trunc(Family::W, wmax)],
    ))
}

/// `ι_{z,w}F - ι_{w,z}F` on total degrees at most `window` in both variables.
pub fn iota_antisym(f: &KernelMonomial, window: u32) -> Result<BiConeSeries> {
    f.check()?;
    let w = Some(window as i64);
    let form = iota_kernel_form(f, Side::ZW, w, w).sub(&iota_kernel_form(f, Side::WZ, w, w));
    let trunc = |fam: Family| Truncation {
        n_min: least_shift(&form, fam),
        max_degree: w,
    };
    Ok(BiConeSeries::from_form(
        &form,
        [trunc(Family::Z), trunc(Family::W)],
    ))
}
