//! Parsing of command-line payloads: fields, scalars, matrices, algebra
//! presentations. Scalars are integers for prime fields and `num/den` for
//! the rationals.

use etale::algebra::{AlgebraElem, FiniteAlgebra, GenMatrix};
use etale::field::{FieldDescriptor, FieldElem};
use etale::poly::UniPoly;

use crate::CliError;

pub fn parse_field(spec: &str) -> Result<FieldDescriptor, CliError> {
    let spec = spec.trim();
    if spec == "Q" || spec == "q" {
        return Ok(FieldDescriptor::rationals());
    }
    if let Some(rest) = spec.strip_prefix('F').or_else(|| spec.strip_prefix('f')) {
        let p: u64 = rest
            .parse()
            .map_err(|_| CliError::Input(format!("bad field '{spec}': expected Q or F<p>")))?;
        return FieldDescriptor::prime_field(p)
            .map_err(|e| CliError::Input(format!("bad field '{spec}': {e}")));
    }
    Err(CliError::Input(format!(
        "bad field '{spec}': expected Q or F<p>"
    )))
}

pub fn parse_elem(field: &FieldDescriptor, text: &str) -> Result<FieldElem, CliError> {
    let text = text.trim();
    let bad = |why: &str| CliError::Input(format!("bad element '{text}' at position 0: {why}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad("numerator"))?;
        let den: i64 = den.trim().parse().map_err(|_| bad("denominator"))?;
        return field.fraction(num, den).map_err(|e| bad(&format!("{e}")));
    }
    let value: i64 = text.parse().map_err(|_| bad("expected an integer"))?;
    Ok(field.integer(value))
}

pub fn parse_vector(field: &FieldDescriptor, text: &str) -> Result<Vec<FieldElem>, CliError> {
    text.split(',')
        .map(|part| parse_elem(field, part))
        .collect()
}

/// Rows separated by ';', entries by ','.
pub fn parse_matrix(field: &FieldDescriptor, text: &str) -> Result<GenMatrix, CliError> {
    let rows = text
        .split(';')
        .map(|row| parse_vector(field, row))
        .collect::<Result<Vec<_>, _>>()?;
    GenMatrix::new(field, rows).map_err(CliError::from)
}

pub fn parse_gens(algebra: &FiniteAlgebra, text: &str) -> Result<Vec<AlgebraElem>, CliError> {
    text.split(';')
        .map(|row| {
            let coords = parse_vector(algebra.field(), row)?;
            algebra.element(coords).map_err(CliError::from)
        })
        .collect()
}

/// Presentations: `split:N`, `monogenic:c0,c1,...,1` (ascending, monic), or
/// `table:@path` pointing at a JSON structure-constant table.
pub fn parse_algebra(field: &FieldDescriptor, spec: &str) -> Result<FiniteAlgebra, CliError> {
    if let Some(n) = spec.strip_prefix("split:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Input(format!("bad split dimension in '{spec}'")))?;
        return FiniteAlgebra::split(field, n).map_err(CliError::from);
    }
    if let Some(coeffs) = spec.strip_prefix("monogenic:") {
        let coeffs = parse_vector(field, coeffs)?;
        let poly = UniPoly::from_coeffs(field, coeffs).map_err(CliError::from)?;
        return FiniteAlgebra::monogenic(&poly).map_err(CliError::from);
    }
    if let Some(path) = spec.strip_prefix("table:@") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read '{path}': {e}")))?;
        return parse_table_json(field, &text);
    }
    Err(CliError::Input(format!(
        "bad algebra '{spec}': expected split:N, monogenic:COEFFS, or table:@FILE"
    )))
}

fn parse_table_json(field: &FieldDescriptor, text: &str) -> Result<FiniteAlgebra, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad table JSON: {e}")))?;
    let dim = value["dim"]
        .as_u64()
        .ok_or_else(|| CliError::Input("table JSON needs a 'dim' integer".into()))?
        as usize;
    let elem_at = |v: &serde_json::Value| -> Result<FieldElem, CliError> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| CliError::Input("non-integer table entry".into()))?;
                Ok(field.integer(i))
            }
            serde_json::Value::String(s) => parse_elem(field, s),
            _ => Err(CliError::Input(
                "table entries must be numbers or strings".into(),
            )),
        }
    };
    let vector = |v: &serde_json::Value| -> Result<Vec<FieldElem>, CliError> {
        v.as_array()
            .ok_or_else(|| CliError::Input("expected an array".into()))?
            .iter()
            .map(elem_at)
            .collect()
    };
    let unit = vector(&value["unit"])?;
    let constants_json = value["constants"]
        .as_array()
        .ok_or_else(|| CliError::Input("table JSON needs 'constants'".into()))?;
    let mut constants = Vec::with_capacity(dim);
    for row in constants_json {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Input("constants must be a 3d array".into()))?;
        constants.push(row.iter().map(&vector).collect::<Result<Vec<_>, _>>()?);
    }
    FiniteAlgebra::new(field, constants, unit).map_err(CliError::from)
}
