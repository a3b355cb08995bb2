//! Path and model arguments: a built-in name or a JSON file.

use planar_rough::algebra::parse_rational;
use planar_rough::io::{parse_model, parse_path};
use planar_rough::rde::{intro_model, ChartModel};
use planar_rough::roughpath::{PiecewisePolyPath, UniPoly};
use planar_rough::{rat, Rational};

use crate::report::{Failure, Inputs};

pub const PATH_HELP: &str = "moment:D, diagonal:D, quadratic, or a path JSON file";
pub const MODEL_HELP: &str = "exponential, intro, sphere:B1,B2,..., or a model JSON file";

fn dimension(arg: &str, spec: &str) -> Result<usize, Failure> {
    match arg.parse::<usize>() {
        Ok(d) if d > 0 => Ok(d),
        _ => Err(Failure::Usage(format!("bad dimension in path {spec:?}"))),
    }
}

/// Built-in paths live on `[start, end]`; files carry their own domain.
pub fn path(spec: &str, start: &Rational, end: &Rational, inputs: &mut Inputs) -> Result<PiecewisePolyPath, Failure> {
    if start >= end {
        return Err(Failure::Usage(format!("empty interval [{start}, {end}]")));
    }
    let (s, e) = (start.clone(), end.clone());
    match spec.split_once(':') {
        Some(("moment", d)) => Ok(PiecewisePolyPath::moment_curve(dimension(d, spec)?, s, e)),
        Some(("diagonal", d)) => Ok(PiecewisePolyPath::diagonal(dimension(d, spec)?, s, e)),
        _ if spec == "quadratic" => Ok(PiecewisePolyPath::polynomial(
            vec![UniPoly::monomial(rat(1, 1), 1), UniPoly::monomial(rat(1, 2), 2)],
            s,
            e,
        )?),
        _ => Ok(parse_path(&inputs.read(spec)?)?),
    }
}

pub fn model(spec: &str, inputs: &mut Inputs) -> Result<ChartModel, Failure> {
    match spec.split_once(':') {
        Some(("sphere", gens)) => {
            let gens = gens
                .split(',')
                .map(|g| g.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad generator list in {spec:?}")))?;
            Ok(ChartModel::sphere_constant(&gens)?)
        }
        _ if spec == "exponential" => Ok(ChartModel::exponential()),
        _ if spec == "intro" => Ok(intro_model()),
        _ => Ok(parse_model(&inputs.read(spec)?)?),
    }
}

pub fn rational(text: &str) -> Result<Rational, Failure> {
    parse_rational(text.trim()).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

pub fn rationals(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(rational).collect()
}

pub fn floats(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("{x:?} is not a number")))
        })
        .collect()
}

pub fn integers(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("{x:?} is not a non-negative integer")))
        })
        .collect()
}
