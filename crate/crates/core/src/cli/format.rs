//! Line-oriented JSON files: one header object, then one object per term.
//!
//! Rationals are `["numerator", "denominator"]` string pairs and polynomials in `T` are lists
//! of `[exponent vector, rational]` pairs. Generators are referenced by name.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::conecalc::{BiConeSeries, ConeIndex, ConeSeries, HarmonicBasis, Truncation};
use crate::error::{Error, Result};
use crate::exactalg::rational::{from_pair, to_pair};
use crate::exactalg::{Family, Monomial, Poly, Rational};
use crate::pseudoalg::{BracketTable, ChiVector, LambdaPoly, LieStructure, ModuleElement};
use crate::vla::VLAStructure;

type Pair = [String; 2];
type PolyTerm = (Vec<u32>, Pair);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lie,
    Pseudoalgebra,
    Vla,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    kind: Kind,
    #[serde(default)]
    dim: usize,
    generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi: Option<Vec<Pair>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieLine {
    pair: [String; 2],
    gen: String,
    coeff: Pair,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketLine {
    pair: [String; 2],
    lambda: Vec<u32>,
    gen: String,
    poly: Vec<PolyTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionLine {
    pair: [String; 2],
    /// `[n, m, σ]`.
    mode: (i64, u32, usize),
    gen: String,
    poly: Vec<PolyTerm>,
}

/// A parsed definition file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraFile {
    Lie(LieStructure),
    /// A bracket table, with the character when the file describes `S(D, χ)`.
    Pseudoalgebra(BracketTable, Option<ChiVector>),
    Vla(VLAStructure),
}

impl AlgebraFile {
    pub fn kind(&self) -> Kind {
        match self {
            AlgebraFile::Lie(_) => Kind::Lie,
            AlgebraFile::Pseudoalgebra(..) => Kind::Pseudoalgebra,
            AlgebraFile::Vla(_) => Kind::Vla,
        }
    }
}

fn parse_line<T: DeserializeOwned>(line: &str, number: usize) -> Result<T> {
    serde_json::from_str(line).map_err(|e| Error::Parse(format!("line {number}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable value")
}

struct Names<'a>(&'a [String]);

impl Names<'_> {
    fn index(&self, name: &str, number: usize) -> Result<usize> {
        self.0
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Parse(format!("line {number}: unknown generator {name:?}")))
    }
}

fn read_poly(dim: usize, terms: &[PolyTerm], number: usize) -> Result<Poly> {
    let mut p = Poly::zero(dim);
    for (exps, c) in terms {
        if exps.len() != dim {
            return Err(Error::Parse(format!(
                "line {number}: exponent vector {exps:?} should have {dim} entries"
            )));
        }
        p.add_term(Monomial::from_exponents(Family::T, exps), from_pair(c)?);
    }
    Ok(p)
}

fn write_poly(dim: usize, p: &Poly) -> Vec<PolyTerm> {
    p.terms()
        .map(|(m, c)| (m.exponents_in(Family::T, dim), to_pair(c)))
        .collect()
}

/// Parses a definition file's contents, checking every invariant of the target type.
pub fn parse_algebra_str(text: &str) -> Result<AlgebraFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n0, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    let header: Header = parse_line(first, n0)?;
    if header.generators.is_empty() {
        return Err(Error::Parse("the generator list is empty".into()));
    }
    let names = Names(&header.generators);
    let dim = header.dim;
    match header.kind {
        Kind::Lie => {
            if header.chi.is_some() {
                return Err(Error::Parse("a Lie algebra takes no chi".into()));
            }
            let mut consts = Vec::new();
            for (n, line) in lines {
                let l: LieLine = parse_line(line, n)?;
                let i = names.index(&l.pair[0], n)?;
                let j = names.index(&l.pair[1], n)?;
                let k = names.index(&l.gen, n)?;
                consts.push(((i, j, k), from_pair(&l.coeff)?));
            }
            Ok(AlgebraFile::Lie(LieStructure::new(
                header.generators.clone(),
                consts,
            )?))
        }
        Kind::Pseudoalgebra => {
            let r = header.generators.len();
            let mut entries = vec![LambdaPoly::zero(dim); r * r];
            for (n, line) in lines {
                let l: BracketLine = parse_line(line, n)?;
                let i = names.index(&l.pair[0], n)?;
                let j = names.index(&l.pair[1], n)?;
                let g = names.index(&l.gen, n)?;
                if l.lambda.len() != dim {
                    return Err(Error::Parse(format!(
                        "line {n}: λ exponent vector should have {dim} entries"
                    )));
                }
                let p = read_poly(dim, &l.poly, n)?.mul_monomial(
                    &Monomial::from_exponents(Family::Lambda, &l.lambda),
                    &Rational::from_integer(1.into()),
                );
                let term = LambdaPoly::from_coords(dim, [(g, p)])?;
                entries[i * r + j] = entries[i * r + j].add(&term);
            }
            let table = BracketTable::new(dim, header.generators.clone(), entries)?;
            let chi = match &header.chi {
                None => None,
                Some(values) => {
                    if values.len() != dim {
                        return Err(Error::Parse(format!("chi should have {dim} entries")));
                    }
                    let v = values.iter().map(from_pair).collect::<Result<Vec<_>>>()?;
                    Some(ChiVector::new(v))
                }
            };
            Ok(AlgebraFile::Pseudoalgebra(table, chi))
        }
        Kind::Vla => {
            if header.chi.is_some() {
                return Err(Error::Parse("a vertex Lie algebra takes no chi".into()));
            }
            let r = header.generators.len();
            let mut coeffs: Vec<BTreeMap<ConeIndex, ModuleElement>> = vec![BTreeMap::new(); r * r];
            for (n, line) in lines {
                let l: ActionLine = parse_line(line, n)?;
                let i = names.index(&l.pair[0], n)?;
                let j = names.index(&l.pair[1], n)?;
                let g = names.index(&l.gen, n)?;
                let idx = ConeIndex::new(l.mode.0, l.mode.1, l.mode.2);
                let x = ModuleElement::from_coords(dim, [(g, read_poly(dim, &l.poly, n)?)])?;
                let slot = coeffs[i * r + j]
                    .entry(idx)
                    .or_insert_with(|| ModuleElement::zero(dim));
                *slot = slot.add(&x);
            }
            let actions = coeffs
                .into_iter()
                .map(|c| ConeSeries::exact(dim, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(AlgebraFile::Vla(VLAStructure::new(
                dim,
                header.generators.clone(),
                actions,
            )?))
        }
    }
}

/// Reads and parses a definition file.
pub fn parse_algebra(path: &std::path::Path) -> Result<AlgebraFile> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Error::Parse(format!("{} is not valid UTF-8", path.display())))?;
    parse_algebra_str(&text)
}

fn push_line(out: &mut String, line: String) {
    out.push_str(&line);
    out.push('\n');
}

/// Canonical file contents; `parse_algebra_str` inverts it.
pub fn emit_algebra(obj: &AlgebraFile) -> String {
    let mut out = String::new();
    match obj {
        AlgebraFile::Lie(g) => {
            push_line(
                &mut out,
                to_json(&Header {
                    kind: Kind::Lie,
                    dim: 0,
                    generators: g.names().to_vec(),
                    chi: None,
                }),
            );
            for ((i, j, k), c) in g.constants() {
                push_line(
                    &mut out,
                    to_json(&LieLine {
                        pair: [g.names()[*i].clone(), g.names()[*j].clone()],
                        gen: g.names()[*k].clone(),
                        coeff: to_pair(c),
                    }),
                );
            }
        }
        AlgebraFile::Pseudoalgebra(table, chi) => {
            let dim = table.dim();
            let names = table.generators();
            push_line(
                &mut out,
                to_json(&Header {
                    kind: Kind::Pseudoalgebra,
                    dim,
                    generators: names.to_vec(),
                    chi: chi
                        .as_ref()
                        .map(|c| c.values().iter().map(to_pair).collect()),
                }),
            );
            for ((i, j), entry) in table.entries() {
                for (lm, x) in entry.lambda_terms() {
                    for (g, p) in x.coords() {
                        push_line(
                            &mut out,
                            to_json(&BracketLine {
                                pair: [names[i].clone(), names[j].clone()],
                                lambda: lm.exponents_in(Family::Lambda, dim),
                                gen: names[*g].clone(),
                                poly: write_poly(dim, p),
                            }),
                        );
                    }
                }
            }
        }
        AlgebraFile::Vla(s) => {
            let dim = s.dim();
            let names = s.generators();
            push_line(
                &mut out,
                to_json(&Header {
                    kind: Kind::Vla,
                    dim,
                    generators: names.to_vec(),
                    chi: None,
                }),
            );
            for ((i, j), series) in s.actions() {
                for (idx, x) in series.coeffs() {
                    for (g, p) in x.coords() {
                        push_line(
                            &mut out,
                            to_json(&ActionLine {
                                pair: [names[i].clone(), names[j].clone()],
                                mode: (idx.n, idx.m, idx.sigma),
                                gen: names[*g].clone(),
                                poly: write_poly(dim, p),
                            }),
                        );
                    }
                }
            }
        }
    }
    out
}

#[derive(Serialize)]
struct BasisHeader {
    kind: &'static str,
    dim: usize,
    degree: u32,
    count: usize,
}

#[derive(Serialize)]
struct BasisLine {
    sigma: usize,
    /// Terms as `[z exponent vector, rational]`.
    poly: Vec<PolyTerm>,
    display: String,
}

pub fn emit_harmonic_basis(basis: &HarmonicBasis) -> String {
    let mut out = String::new();
    push_line(
        &mut out,
        to_json(&BasisHeader {
            kind: "harmonic-basis",
            dim: basis.dim(),
            degree: basis.degree(),
            count: basis.len(),
        }),
    );
    for (s, h) in basis.polys().iter().enumerate() {
        let poly = h
            .terms()
            .rev()
            .map(|(m, c)| (m.exponents_in(Family::Z, basis.dim()), to_pair(c)))
            .collect();
        push_line(
            &mut out,
            to_json(&BasisLine {
                sigma: s + 1,
                poly,
                display: h.to_string(),
            }),
        );
    }
    out
}

#[derive(Serialize)]
struct TruncationOut {
    n_min: i64,
    max_degree: Option<i64>,
}

impl From<Truncation> for TruncationOut {
    fn from(t: Truncation) -> Self {
        TruncationOut {
            n_min: t.n_min,
            max_degree: t.max_degree,
        }
    }
}

#[derive(Serialize)]
struct IotaHeader {
    kind: &'static str,
    dim: usize,
    k: u32,
    side: &'static str,
    window: u32,
    z: TruncationOut,
    w: TruncationOut,
}

#[derive(Serialize)]
struct BiLine {
    z: (i64, u32, usize),
    w: (i64, u32, usize),
    coeff: Pair,
}

pub fn emit_iota(series: &BiConeSeries, k: u32, side: &'static str, window: u32) -> String {
    let mut out = String::new();
    let [tz, tw] = series.truncation();
    push_line(
        &mut out,
        to_json(&IotaHeader {
            kind: "iota-expansion",
            dim: series.dim(),
            k,
            side,
            window,
            z: tz.into(),
            w: tw.into(),
        }),
    );
    for ((z, w), c) in series.coeffs() {
        push_line(
            &mut out,
            to_json(&BiLine {
                z: (z.n, z.m, z.sigma),
                w: (w.n, w.m, w.sigma),
                coeff: to_pair(c),
            }),
        );
    }
    out
}
