//! File formats shared with the command line: JSON for series, tensors,
//! posets, paths and models; CSV for tables. Rationals are written as
//! `num`/`den` decimal strings so files diff cleanly.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Rational, Series, Word};
use crate::characters::DecayTable;
use crate::forest::{NonplanarForest, PlanarForest, PosetView, Relation};
use crate::hopf::Tensor;
use crate::rde::{ChartModel, OrderStudy, Poly, Trajectory};
use crate::roughpath::{BasisKind, HolderTable, PiecewisePolyPath, TabulatedLift, UniPoly};
use crate::{Error, Result};

fn json_err(e: serde_json::Error) -> Error {
    Error::Invalid(format!("malformed JSON: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("CSV output failed: {e}"))
}

fn num_den(r: &Rational) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

fn from_num_den(num: &str, den: &str) -> Result<Rational> {
    parse_rational(&format!("{num}/{den}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub elem: String,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

/// A series read from a file, tagged by basis.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Word(Series<Word>),
    Planar(Series<PlanarForest>),
    Nonplanar(Series<NonplanarForest>),
}

pub fn series_json<K: Ord + Clone + Display>(kind: BasisKind, s: &Series<K>) -> SeriesJson {
    SeriesJson {
        basis: kind.name().into(),
        terms: s
            .iter()
            .map(|(k, c)| {
                let (num, den) = num_den(c);
                TermJson {
                    elem: k.to_string(),
                    num,
                    den,
                }
            })
            .collect(),
    }
}

pub fn series_to_string<K: Ord + Clone + Display>(kind: BasisKind, s: &Series<K>) -> String {
    serde_json::to_string_pretty(&series_json(kind, s)).expect("serializable")
}

fn collect_terms<K: Ord + Clone>(terms: &[TermJson], parse: impl Fn(&str) -> Result<K>) -> Result<Series<K>> {
    let mut out = Series::zero();
    for t in terms {
        out.add_term(parse(&t.elem)?, from_num_den(&t.num, &t.den)?);
    }
    Ok(out)
}

pub fn parse_series(text: &str, alphabet: usize) -> Result<AnySeries> {
    let j: SeriesJson = serde_json::from_str(text).map_err(json_err)?;
    Ok(match BasisKind::parse(&j.basis)? {
        BasisKind::Word => AnySeries::Word(collect_terms(&j.terms, |e| Word::parse(e, alphabet))?),
        BasisKind::Planar => AnySeries::Planar(collect_terms(&j.terms, |e| PlanarForest::parse(e, alphabet))?),
        BasisKind::Nonplanar => {
            AnySeries::Nonplanar(collect_terms(&j.terms, |e| NonplanarForest::parse(e, alphabet))?)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub left: String,
    pub right: String,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub basis: String,
    pub terms: Vec<TensorTermJson>,
}

pub fn tensor_json<B: Ord + Clone + Display>(kind: BasisKind, t: &Tensor<B>) -> TensorJson {
    TensorJson {
        basis: kind.name().into(),
        terms: t
            .iter()
            .map(|((l, r), c)| {
                let (num, den) = num_den(c);
                TensorTermJson {
                    left: l.to_string(),
                    right: r.to_string(),
                    num,
                    den,
                }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub rank: usize,
    pub letter: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub vertices: Vec<VertexJson>,
    pub lt: Vec<[usize; 2]>,
    pub ll: Vec<[usize; 2]>,
}

/// Vertices by `⋘`-rank with both order relations as pair lists.
pub fn poset_json(view: &PosetView) -> PosetJson {
    let pairs = |rel| view.pairs(rel).into_iter().map(|(a, b)| [a, b]).collect();
    PosetJson {
        vertices: (0..view.len())
            .map(|v| VertexJson {
                rank: v,
                letter: view.letter(v).to_string(),
            })
            .collect(),
        lt: pairs(Relation::Ancestor),
        ll: pairs(Relation::Planar),
    }
}

/// A rational written as a JSON string (`"3/4"`, `"0.25"`) or integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberJson {
    Int(i64),
    Text(String),
}

impl NumberJson {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            NumberJson::Int(n) => Ok(Rational::from_integer((*n).into())),
            NumberJson::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        NumberJson::Text(r.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathJson {
    pub dim: usize,
    pub breakpoints: Vec<NumberJson>,
    /// `pieces[i][a]` lists the coefficients of component `a` on piece `i`,
    /// constant term first, in the absolute time variable.
    pub pieces: Vec<Vec<Vec<NumberJson>>>,
}

pub fn path_json(path: &PiecewisePolyPath) -> PathJson {
    PathJson {
        dim: path.dim(),
        breakpoints: path.breakpoints().iter().map(NumberJson::from_rational).collect(),
        pieces: path
            .pieces()
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| c.coeffs().iter().map(NumberJson::from_rational).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn parse_path(text: &str) -> Result<PiecewisePolyPath> {
    let j: PathJson = serde_json::from_str(text).map_err(json_err)?;
    let breakpoints = j.breakpoints.iter().map(NumberJson::to_rational).collect::<Result<Vec<_>>>()?;
    let pieces = j
        .pieces
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| Ok(UniPoly::new(c.iter().map(NumberJson::to_rational).collect::<Result<Vec<_>>>()?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let path = PiecewisePolyPath::new(breakpoints, pieces)?;
    if path.dim() != j.dim {
        return Err(Error::Invalid(format!("declared dim {} but pieces have {}", j.dim, path.dim())));
    }
    Ok(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exponents: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(rename = "N")]
    pub lie_dim: usize,
    pub d: usize,
    pub epsilon: Vec<Vec<Vec<MonomialJson>>>,
    pub f: Vec<Vec<Vec<MonomialJson>>>,
    pub invariant: Option<Vec<MonomialJson>>,
}

fn poly_json(p: &Poly) -> Vec<MonomialJson> {
    p.terms()
        .map(|(e, c)| {
            let (num, den) = num_den(c);
            MonomialJson {
                exponents: e.clone(),
                num,
                den,
            }
        })
        .collect()
}

fn poly_from_json(n: usize, terms: &[MonomialJson]) -> Result<Poly> {
    Poly::from_terms(
        n,
        terms
            .iter()
            .map(|m| Ok((m.exponents.clone(), from_num_den(&m.num, &m.den)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

pub fn model_json(model: &ChartModel) -> ModelJson {
    let table = |rows: &[Vec<Poly>]| rows.iter().map(|r| r.iter().map(poly_json).collect()).collect();
    ModelJson {
        name: Some(model.name.clone()),
        n: model.chart_dim(),
        lie_dim: model.lie_dim(),
        d: model.fields(),
        epsilon: table(model.epsilon()),
        f: table(model.coefficients()),
        invariant: model.invariant().map(poly_json),
    }
}

pub fn parse_model(text: &str) -> Result<ChartModel> {
    let j: ModelJson = serde_json::from_str(text).map_err(json_err)?;
    let table = |rows: &[Vec<Vec<MonomialJson>>]| {
        rows.iter()
            .map(|r| r.iter().map(|p| poly_from_json(j.n, p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
    };
    let epsilon = table(&j.epsilon)?;
    let f = table(&j.f)?;
    let invariant = j.invariant.as_deref().map(|p| poly_from_json(j.n, p)).transpose()?;
    let model = ChartModel::new(j.name.clone().unwrap_or_else(|| "custom".into()), epsilon, f, invariant)?;
    if model.chart_dim() != j.n || model.lie_dim() != j.lie_dim || model.fields() != j.d {
        return Err(Error::Invalid(format!(
            "declared (n, N, d) = ({}, {}, {}) but the data has ({}, {}, {})",
            j.n,
            j.lie_dim,
            j.d,
            model.chart_dim(),
            model.lie_dim(),
            model.fields()
        )));
    }
    Ok(model)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("CSV output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// Shortest round-trip representation of a float.
fn f(x: f64) -> String {
    format!("{x:e}")
}

/// `s, t, basis, value` rows.
pub fn lift_table_csv<B>(table: &TabulatedLift<B>) -> Result<String>
where
    B: Clone + Eq + std::hash::Hash + crate::algebra::Graded + Display + Send + Sync,
{
    write_csv(
        &["s", "t", "basis", "value"],
        table
            .entries()
            .into_iter()
            .map(|(s, t, x, v)| vec![s.to_string(), t.to_string(), x.to_string(), f(v)]),
    )
}

/// Parses `s, t, basis, value` rows back into a tabulated lift.
pub fn parse_lift_table<B>(text: &str, cap: usize, parse: impl Fn(&str) -> Result<B>) -> Result<TabulatedLift<B>>
where
    B: Clone + Eq + std::hash::Hash + crate::algebra::Graded + Display + Send + Sync,
{
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut table = TabulatedLift::new(cap);
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Invalid(format!("malformed CSV: {e}")))?;
        if rec.len() != 4 {
            return Err(Error::Invalid(format!("expected 4 columns, got {}", rec.len())));
        }
        let value: f64 = rec[3]
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("not a number: {:?}", &rec[3])))?;
        table.insert(parse_rational(&rec[0])?, parse_rational(&rec[1])?, parse(&rec[2])?, value);
    }
    Ok(table)
}

/// `t, y1, …, yn[, drift]` rows.
pub fn trajectory_csv(tr: &Trajectory) -> Result<String> {
    let n = tr.points.first().map_or(0, Vec::len);
    let mut header: Vec<String> = vec!["t".into()];
    header.extend((1..=n).map(|a| format!("y{a}")));
    let with_drift = !tr.drift.is_empty();
    if with_drift {
        header.push("drift".into());
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(
        &header,
        tr.times.iter().enumerate().map(|(k, t)| {
            let mut row = vec![f(*t)];
            row.extend(tr.points[k].iter().map(|v| f(*v)));
            if with_drift {
                row.push(f(tr.drift[k]));
            }
            row
        }),
    )
}

/// `N, h, error` rows.
pub fn order_study_csv(study: &OrderStudy) -> Result<String> {
    write_csv(
        &["N", "h", "error"],
        study
            .rows
            .iter()
            .map(|r| vec![r.degree.to_string(), f(r.h), f(r.error)]),
    )
}

/// `degree, element, q, q_gamma, ratio` rows.
pub fn decay_table_csv(table: &DecayTable) -> Result<String> {
    write_csv(
        &["degree", "element", "q", "q_gamma", "ratio"],
        table
            .rows
            .iter()
            .map(|r| vec![r.degree.to_string(), r.element.clone(), r.q.to_string(), f(r.q_gamma), f(r.ratio)]),
    )
}

/// `degree, element, sup_ratio, q_gamma, bound` rows.
pub fn holder_table_csv(table: &HolderTable) -> Result<String> {
    write_csv(
        &["degree", "element", "sup_ratio", "q_gamma", "bound"],
        table
            .rows
            .iter()
            .map(|r| vec![r.degree.to_string(), r.element.clone(), f(r.sup_ratio), f(r.q_gamma), f(r.bound)]),
    )
}
