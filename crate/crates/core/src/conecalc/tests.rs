use num_traits::{One, Zero};
use proptest::prelude::*;

use super::harmonic::zvar;
use super::*;
use crate::exactalg::linalg::Matrix;
use crate::exactalg::rational::{int, rat};
use crate::exactalg::Var;

fn idx(n: i64, m: u32, sigma: usize) -> ConeIndex {
    ConeIndex::new(n, m, sigma)
}

fn series(dim: usize, terms: &[(ConeIndex, i64)]) -> ConeSeries<Rational> {
    ConeSeries::exact(dim, terms.iter().map(|(i, c)| (*i, int(*c)))).unwrap()
}

/// Harmonic projection by the closed form `Σ_k a_k (z²)^k Δ^k p` for homogeneous `p` of degree `d`.
fn harmonic_projection(p: &Poly, d: u32) -> Poly {
    let dim = p.dim() as i64;
    let sq = Poly::square(p.dim(), Family::Z);
    let mut out = Poly::zero(p.dim());
    let mut lap = p.clone();
    let mut coeff = Rational::one();
    let mut k = 0i64;
    while !lap.is_zero() {
        out.add_assign_ref(&(&sq.pow(k as u32) * &lap).scale(&coeff));
        k += 1;
        coeff = -coeff / int(2 * k * (dim + 2 * d as i64 - 2 - 2 * k));
        lap = lap.laplacian(Family::Z);
    }
    out
}

fn laplacian_kernel_rank(dim: usize, m: u32) -> usize {
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
fn dimensions_match_kernel_rank() {
    for dim in 1..=4 {
        for m in 0..=6 {
            let b = harmonic_basis(dim, m);
            assert_eq!(
                h_dim(dim, m),
                laplacian_kernel_rank(dim, m),
                "D={dim} m={m}"
            );
            assert_eq!(b.len(), h_dim(dim, m));
            for h in b.polys() {
                assert!(h.laplacian(Family::Z).is_zero());
            }
        }
    }
}

#[test]
fn harmonic_part_matches_closed_form() {
    let z = |a| zvar(3, a);
    let samples = [
        z(0).pow(4),
        &(&z(0) * &z(1)).pow(2) + &z(2).pow(4).scale(&int(3)),
        &(&z(0).pow(3) * &z(2)) - &z(1).pow(4),
    ];
    for p in samples {
        let parts = gauss_decompose(&p);
        let h0 = parts
            .iter()
            .find(|(j, _)| *j == 0)
            .map(|(_, h)| h.clone())
            .unwrap_or_else(|| Poly::zero(3));
        assert_eq!(h0, harmonic_projection(&p, 4), "{p}");
    }
}

#[test]
fn cone_from_poly_examples() {
    let one = cone_from_poly(&Poly::one(2)).unwrap();
    assert_eq!(one.coeffs().get(&idx(0, 0, 1)), Some(&int(1)));
    let z1 = cone_from_poly(&zvar(2, 0)).unwrap();
    let s1 = harmonic_basis(2, 1).sigma_of(&[1, 0]).unwrap();
    assert_eq!(z1.coeffs().len(), 1);
    assert_eq!(z1.coeffs().get(&idx(0, 1, s1)), Some(&int(1)));
    let sq = cone_from_poly(&zvar(2, 0).pow(2)).unwrap();
    let s2 = harmonic_basis(2, 2).sigma_of(&[2, 0]).unwrap();
    assert_eq!(sq.coeffs().get(&idx(1, 0, 1)), Some(&rat(1, 2)));
    assert_eq!(sq.coeffs().get(&idx(0, 2, s2)), Some(&rat(1, 2)));
    assert_eq!(sq.coeffs().len(), 2);
    assert!(cone_from_poly(&Poly::var(2, Var::new(Family::T, 0))).is_err());
}

#[test]
fn cone_mul_examples() {
    let s = series(2, &[(idx(-1, 0, 1), 1)]);
    let r = cone_mul(&s, &Poly::one(2), 1).unwrap();
    assert_eq!(r, series(2, &[(idx(0, 0, 1), 1)]));
    let s = series(2, &[(idx(0, 0, 1), 1)]);
    let r = cone_mul(&s, &zvar(2, 0), 0).unwrap();
    assert_eq!(r, cone_from_poly(&zvar(2, 0)).unwrap());
    let r = cone_mul(&cone_from_poly(&zvar(2, 0)).unwrap(), &zvar(2, 0), 0).unwrap();
    assert_eq!(r, cone_from_poly(&zvar(2, 0).pow(2)).unwrap());
}

#[test]
fn truncated_queries_are_refused() {
    let s = ConeSeries::new(
        2,
        [(idx(-1, 0, 1), int(1))],
        Truncation {
            n_min: -1,
            max_degree: Some(0),
        },
    )
    .unwrap();
    assert_eq!(s.coefficient(&idx(0, 0, 1)).unwrap(), int(0));
    assert!(matches!(
        s.coefficient(&idx(0, 1, 1)),
        Err(Error::Truncation(_))
    ));
    let up = cone_mul(&s, &zvar(2, 0), 0).unwrap();
    assert_eq!(up.truncation().max_degree, Some(1));
    assert!(matches!(
        wick_extract(&cone_mul(&s, &Poly::one(2), -1).unwrap()),
        Err(Error::Truncation(_))
    ));
}

#[test]
fn singular_part_residue_wick() {
    let s = series(2, &[(idx(-1, 0, 1), 1), (idx(0, 0, 1), 3)]);
    let sp = singular_part(&s);
    assert_eq!(
        sp,
        ConeSeries::new(2, [(idx(-1, 0, 1), int(1))], s.truncation()).unwrap()
    );
    assert_eq!(singular_part(&sp), sp);
    assert!(singular_part(&cone_from_poly(&zvar(2, 1).pow(3)).unwrap()).is_zero());
    assert_eq!(residue(&series(2, &[(idx(-1, 0, 1), 1)])).unwrap(), int(1));
    assert_eq!(
        residue(&cone_from_poly(&zvar(2, 0)).unwrap()).unwrap(),
        int(0)
    );
    assert_eq!(residue(&series(4, &[(idx(-2, 0, 1), 7)])).unwrap(), int(7));
    assert!(matches!(residue(&series(3, &[])), Err(Error::Domain(_))));
    assert_eq!(
        wick_extract(&cone_from_poly(&Poly::one(2)).unwrap()).unwrap(),
        int(1)
    );
    assert_eq!(
        wick_extract(&cone_from_poly(&zvar(2, 0)).unwrap()).unwrap(),
        int(0)
    );
    assert_eq!(wick_extract(&s).unwrap(), int(3));
}

#[test]
fn module_valued_series() {
    let x = ModuleElement::from_coords(2, [(0, Poly::var(2, Var::new(Family::T, 1)))]).unwrap();
    let s = ConeSeries::exact(2, [(idx(-1, 0, 1), x.clone())]).unwrap();
    let r = cone_mul(&s, &Poly::square(2, Family::Z), 0).unwrap();
    assert_eq!(wick_extract(&r).unwrap(), x);
}

#[test]
fn invalid_modes_are_rejected() {
    assert!(ConeSeries::exact(1, [(idx(0, 2, 1), int(1))]).is_err());
    assert!(ConeSeries::exact(2, [(idx(0, 1, 3), int(1))]).is_err());
    assert!(ConeSeries::new(2, [(idx(-2, 0, 1), int(1))], Truncation::exact(-1)).is_err());
}

/// `ι_{z,w}(z-w)^{-2k}` in one variable from the binomial series `Σ C(j+2k-1, j) w^j z^{-j-2k}`.
fn d1_iota_oracle(k: u32, j: u32) -> Rational {
    binomial_nat(j as i64 + 2 * k as i64 - 1, j)
}

fn binomial_nat(n: i64, k: u32) -> Rational {
    crate::exactalg::rational::binomial(n, k)
}

#[test]
fn iota_one_variable_matches_geometric_series() {
    for k in 1..=2u32 {
        let s = iota_expand(1, k, Side::ZW, 6).unwrap();
        for j in 0..=6i64 {
            let z = ConeIndex::from_laurent(-j - 2 * k as i64);
            let w = ConeIndex::from_laurent(j);
            assert_eq!(s.coefficient(&z, &w).unwrap(), d1_iota_oracle(k, j as u32));
        }
        assert_eq!(s.coeffs().len(), 7);
        assert!(s
            .coefficient(
                &ConeIndex::from_laurent(-9 - 2 * k as i64),
                &ConeIndex::from_laurent(7)
            )
            .is_err());
    }
}

#[test]
fn iota_leading_term() {
    for dim in 1..=3 {
        let s = iota_expand(dim, 1, Side::ZW, 3).unwrap();
        assert_eq!(
            s.coefficient(&idx(-1, 0, 1), &idx(0, 0, 1)).unwrap(),
            int(1)
        );
        let s = iota_expand(dim, 1, Side::WZ, 3).unwrap();
        assert_eq!(
            s.coefficient(&idx(0, 0, 1), &idx(-1, 0, 1)).unwrap(),
            int(1)
        );
    }
    let s = iota_expand(2, 0, Side::ZW, 3).unwrap();
    assert_eq!(s.coeffs().len(), 1);
}

#[test]
fn iota_antisym_examples() {
    for dim in 1..=3 {
        let mut f = KernelMonomial::one(dim);
        f.z_exp[0] = 2;
        f.w_exp[dim - 1] = 1;
        assert!(iota_antisym(&f, 6).unwrap().is_zero());
        let f = KernelMonomial {
            z2_pow: -1,
            ..KernelMonomial::one(dim)
        };
        assert!(iota_antisym(&f, 6).unwrap().is_zero());
        let f = KernelMonomial::zw_power(dim, 2);
        assert!(iota_antisym(&f, 6).unwrap().is_zero());
    }
    let s = iota_antisym(&KernelMonomial::zw_power(1, -1), 6).unwrap();
    for j in 0..=6i64 {
        let c = int(j + 1);
        let (a, b) = (ConeIndex::from_laurent(-j - 2), ConeIndex::from_laurent(j));
        assert_eq!(s.coefficient(&a, &b).unwrap(), c);
        assert_eq!(s.coefficient(&b, &a).unwrap(), -c);
    }
    assert_eq!(s.coeffs().len(), 14);
}

#[test]
fn iota_agrees_with_taylor_expansion_of_polynomials() {
    // e^{-w∂_z} applied to z^a terminates: ι_{z,w}((z-w)²)^2 is the polynomial itself.
    let dim = 2;
    let s = iota_expand(dim, 0, Side::ZW, 4).unwrap();
    assert_eq!(s.coefficient(&idx(0, 0, 1), &idx(0, 0, 1)).unwrap(), int(1));
}

fn arb_poly(dim: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let monos = (0..=max_deg)
        .flat_map(|d| monomials_of_degree(dim, Family::Z, d))
        .collect::<Vec<_>>();
    let n = monos.len();
    proptest::collection::vec((0..n, -9i64..=9), 0..8).prop_map(move |terms| {
        Poly::from_terms(
            dim,
            terms.into_iter().map(|(i, c)| (monos[i].clone(), int(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gauss_roundtrip(p in (1usize..=4).prop_flat_map(|d| arb_poly(d, 6))) {
        let parts = gauss_decompose(&p);
        prop_assert_eq!(gauss_reconstruct(p.dim(), Family::Z, &parts), p.clone());
        for (_, h) in &parts {
            prop_assert!(h.laplacian(Family::Z).is_zero());
        }
    }

    #[test]
    fn shift_cancels(p in arb_poly(2, 4), k in -3i64..3) {
        let s = cone_from_poly(&p).unwrap();
        let back = cone_mul(&cone_mul(&s, &Poly::one(2), k).unwrap(), &Poly::one(2), -k).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn cone_mul_is_polynomial_product(p in arb_poly(2, 3), q in arb_poly(2, 3)) {
        let s = cone_from_poly(&p).unwrap();
        prop_assert_eq!(cone_mul(&s, &q, 0).unwrap(), cone_from_poly(&(&p * &q)).unwrap());
    }
}

#[test]
fn one_variable_modes_are_laurent_exponents() {
    for d in -5..=5i64 {
        assert_eq!(ConeIndex::from_laurent(d).degree(), d);
    }
    let s = cone_from_poly(&zvar(1, 0).pow(5)).unwrap();
    assert_eq!(
        s.coeffs().keys().copied().collect::<Vec<_>>(),
        vec![ConeIndex::from_laurent(5)]
    );
    assert!(Rational::zero().is_zero());
}
