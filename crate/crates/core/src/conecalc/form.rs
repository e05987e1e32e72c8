//! Canonical sums `Σ Π_f (x_f²)^{n_f} · p(T, x_f…) · a_g` over one or more cone families.
//!
//! Every stored polynomial is harmonic in each cone family, so the representation is unique
//! and equality of forms is equality of maps.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::harmonic::gauss_decompose_in;
use crate::exactalg::rational::int;
use crate::exactalg::{Family, Monomial, Poly, Rational, Var};

/// Key of a term: the power of `x_f²` for every cone family, then the generator index.
pub(crate) type FormKey = (Vec<i64>, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ConeForm {
    dim: usize,
    fams: Vec<Family>,
    terms: BTreeMap<FormKey, Poly>,
}

impl ConeForm {
    pub fn zero(dim: usize, fams: &[Family]) -> Self {
        ConeForm {
            dim,
            fams: fams.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fams(&self) -> &[Family] {
        &self.fams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<FormKey, Poly> {
        &self.terms
    }

    fn slot(&self, family: Family) -> usize {
        self.fams
            .iter()
            .position(|f| *f == family)
            .unwrap_or_else(|| panic!("{family:?} is not a cone family of this form"))
    }

    /// Inserts a term that is already harmonic in every cone family.
    pub fn add_harmonic(&mut self, shifts: Vec<i64>, gen: usize, p: Poly) {
        if p.is_zero() {
            return;
        }
        let key = (shifts, gen);
        match self.terms.get_mut(&key) {
            Some(q) => {
                q.add_assign_ref(&p);
                if q.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, p);
            }
        }
    }

    /// Inserts an arbitrary polynomial term, decomposing it family by family.
    pub fn add_poly(&mut self, shifts: &[i64], gen: usize, p: &Poly) {
        let mut pending = vec![(shifts.to_vec(), p.clone())];
        for (slot, fam) in self.fams.iter().enumerate() {
            let mut next = Vec::new();
            for (sh, q) in pending {
                if !q.involves(*fam) {
                    next.push((sh, q));
                    continue;
                }
                for (j, part) in gauss_decompose_in(&q, *fam) {
                    let mut s = sh.clone();
                    s[slot] += j as i64;
                    next.push((s, part));
                }
            }
            pending = next;
        }
        for (sh, q) in pending {
            self.add_harmonic(sh, gen, q);
        }
    }

    pub fn add(&self, other: &ConeForm) -> ConeForm {
        assert_eq!(self.fams, other.fams, "cone families differ");
        let mut out = self.clone();
        for ((sh, g), p) in &other.terms {
            out.add_harmonic(sh.clone(), *g, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &ConeForm) -> ConeForm {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ConeForm {
        if c.is_zero() {
            return ConeForm::zero(self.dim, &self.fams);
        }
        ConeForm {
            dim: self.dim,
            fams: self.fams.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Multiplies by the polynomial `p` (any families among T and the cone families), keeping
    /// only product monomials accepted by `keep` before re-decomposing.
    pub fn mul_poly_filtered(&self, p: &Poly, keep: impl Fn(&Monomial) -> bool) -> ConeForm {
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for ((sh, g), q) in &self.terms {
            let prod = (q * p).filter(&keep);
            out.add_poly(sh, *g, &prod);
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> ConeForm {
        self.mul_poly_filtered(p, |_| true)
    }

    /// Multiplies by `(x²)^k` for the cone family `family`.
    pub fn shift(&self, family: Family, k: i64) -> ConeForm {
        let slot = self.slot(family);
        ConeForm {
            dim: self.dim,
            fams: self.fams.clone(),
            terms: self
                .terms
                .iter()
                .map(|((sh, g), p)| {
                    let mut s = sh.clone();
                    s[slot] += k;
                    ((s, *g), p.clone())
                })
                .collect(),
        }
    }

    /// `∂/∂x^α` in the cone family `family`:
    /// `∂_α[(x²)^n p] = 2n x_α (x²)^{n-1} p + (x²)^n ∂_α p`.
    pub fn diff(&self, family: Family, alpha: usize) -> ConeForm {
        let slot = self.slot(family);
        let v = Var::new(family, alpha);
        let xa = Poly::var(self.dim, v);
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for ((sh, g), p) in &self.terms {
            let n = sh[slot];
            if n != 0 {
                let mut s = sh.clone();
                s[slot] -= 1;
                out.add_poly(&s, *g, &(&xa * p).scale(&int(2 * n)));
            }
            let dp = p.diff_unchecked(v);
            if !dp.is_zero() {
                out.add_poly(sh, *g, &dp);
            }
        }
        out
    }

    /// Applies the monomial differential operator `∂_x^{exps}`.
    pub fn diff_multi(&self, family: Family, exps: &[u32]) -> ConeForm {
        let mut out = self.clone();
        for (a, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = out.diff(family, a);
            }
        }
        out
    }

    /// `x → -x` in `family`; harmonic polynomials pick up `(-1)^m`.
    pub fn parity(&self, family: Family) -> ConeForm {
        self.slot(family);
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for (k, p) in &self.terms {
            let flipped = Poly::from_terms(
                self.dim,
                p.terms().map(|(m, c)| {
                    let c = if m.degree_in(family) % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    (m.clone(), c)
                }),
            );
            out.add_harmonic(k.0.clone(), k.1, flipped);
        }
        out
    }

    /// Keeps the terms with `x_f²`-power below zero in every listed family.
    pub fn singular_in(&self, families: &[Family]) -> ConeForm {
        let slots: Vec<usize> = families.iter().map(|f| self.slot(*f)).collect();
        self.retain(|sh, _| slots.iter().all(|&s| sh[s] < 0))
    }

    /// Keeps harmonic components of degree at most `max_m` in each listed family.
    pub fn harmonic_window(&self, families: &[Family], max_m: u32) -> ConeForm {
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for ((sh, g), p) in &self.terms {
            let q = p.filter(|m| families.iter().all(|f| m.degree_in(*f) <= max_m));
            out.add_harmonic(sh.clone(), *g, q);
        }
        out
    }

    /// Keeps monomials whose Laurent degree `2n + deg` in `family` is at most `max`.
    pub fn degree_window(&self, family: Family, max: i64) -> ConeForm {
        let slot = self.slot(family);
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for ((sh, g), p) in &self.terms {
            let base = 2 * sh[slot];
            let q = p.filter(|m| base + m.degree_in(family) as i64 <= max);
            out.add_harmonic(sh.clone(), *g, q);
        }
        out
    }

    pub fn retain(&self, keep: impl Fn(&[i64], usize) -> bool) -> ConeForm {
        ConeForm {
            dim: self.dim,
            fams: self.fams.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((sh, g), _)| keep(sh, *g))
                .map(|(k, p)| (k.clone(), p.clone()))
                .collect(),
        }
    }

    /// Adds `family` as a further cone family with `x²`-power zero everywhere.
    pub fn with_family(&self, family: Family) -> ConeForm {
        if self.fams.contains(&family) {
            return self.clone();
        }
        let mut fams = self.fams.clone();
        fams.push(family);
        fams.sort();
        let slot = fams.iter().position(|f| *f == family).unwrap();
        ConeForm {
            dim: self.dim,
            fams,
            terms: self
                .terms
                .iter()
                .map(|((sh, g), p)| {
                    let mut s = sh.clone();
                    s.insert(slot, 0);
                    ((s, *g), p.clone())
                })
                .collect(),
        }
    }

    /// Renames the cone family `from` to `to`, which must not already be present.
    pub fn rename(&self, from: Family, to: Family) -> ConeForm {
        assert!(!self.fams.contains(&to), "target family already present");
        let slot = self.slot(from);
        let mut fams = self.fams.clone();
        fams[slot] = to;
        let mut order: Vec<usize> = (0..fams.len()).collect();
        order.sort_by_key(|&i| fams[i]);
        let sorted: Vec<Family> = order.iter().map(|&i| fams[i]).collect();
        ConeForm {
            dim: self.dim,
            fams: sorted,
            terms: self
                .terms
                .iter()
                .map(|((sh, g), p)| {
                    let s = order.iter().map(|&i| sh[i]).collect();
                    ((s, *g), p.rename_family(from, to))
                })
                .collect(),
        }
    }

    /// Multiplies two forms over the same cone families; `other` must be scalar (generator 0
    /// with no module meaning), its generator index is ignored.
    pub fn mul_scalar_form(&self, scalar: &ConeForm, keep: impl Fn(&Monomial) -> bool) -> ConeForm {
        assert_eq!(self.fams, scalar.fams, "cone families differ");
        let mut out = ConeForm::zero(self.dim, &self.fams);
        for ((sh1, g), p1) in &self.terms {
            for ((sh2, _), p2) in &scalar.terms {
                let prod = (p1 * p2).filter(&keep);
                if prod.is_zero() {
                    continue;
                }
                let sh: Vec<i64> = sh1.iter().zip(sh2).map(|(a, b)| a + b).collect();
                out.add_poly(&sh, *g, &prod);
            }
        }
        out
    }

    /// Smallest Laurent degree `2n + m` in `family` over all terms.
    pub fn min_degree(&self, family: Family) -> Option<i64> {
        let slot = self.slot(family);
        self.terms
            .iter()
            .filter_map(|((sh, _), p)| p.min_degree_in(family).map(|m| 2 * sh[slot] + m as i64))
            .min()
    }

    /// Smallest `x²`-power in `family`.
    pub fn min_shift(&self, family: Family) -> Option<i64> {
        let slot = self.slot(family);
        self.terms.keys().map(|(sh, _)| sh[slot]).min()
    }
}
