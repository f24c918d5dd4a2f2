//! Plain-text point files: exact rationals (`3`, `-1/2`), whitespace
//! separated, row-major. Lines starting with `#` are ignored.

use std::str::FromStr;

use ranklab_core::witness::HypersurfaceModel;
use ranklab_core::{varieties, Scalar};

use crate::error::{CliError, Result};

pub fn parse_scalars(text: &str) -> Result<Vec<Scalar>> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|tok| {
            let x = Scalar::from_str(tok).map_err(|_| CliError::Config(format!("not an exact rational: {tok:?}")))?;
            Ok(x)
        })
        .collect()
}

/// Converts entries in user layout to the model's equation coordinates.
/// Flag: nine entries of a traceless matrix. Sym2: nine entries of a
/// symmetric matrix. Klein: six Plücker coordinates.
pub fn model_point(model: HypersurfaceModel, entries: &[Scalar]) -> Result<Vec<Scalar>> {
    let expect = |n: usize| {
        if entries.len() == n {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "point file for {} needs {n} entries, found {}",
                crate::model::variety_name(model),
                entries.len()
            )))
        }
    };
    match model {
        HypersurfaceModel::Flag => {
            expect(9)?;
            varieties::flag_chart(entries).map_err(|e| CliError::Config(e.to_string()))
        }
        HypersurfaceModel::Sym2 => {
            expect(9)?;
            varieties::sym2_coords(entries).map_err(|e| CliError::Config(e.to_string()))
        }
        HypersurfaceModel::Klein => {
            expect(6)?;
            Ok(entries.to_vec())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ranklab_core::scalar::{int, ints, ratio};

    #[test]
    fn parses_rationals_and_comments() {
        let v = parse_scalars("# P\n1 -1/2\n  3/6\t0\n").unwrap();
        assert_eq!(v, vec![int(1), ratio(-1, 2), ratio(1, 2), int(0)]);
    }

    #[test]
    fn rejects_floats() {
        assert!(parse_scalars("1.5").is_err());
        assert!(parse_scalars("1/0").is_err());
    }

    #[test]
    fn flag_point_must_be_traceless() {
        let p = ints(&[1, 0, 0, 0, 1, 0, 0, 0, -2]);
        assert_eq!(model_point(HypersurfaceModel::Flag, &p).unwrap().len(), 8);
        let q = ints(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(model_point(HypersurfaceModel::Flag, &q).is_err());
        assert!(model_point(HypersurfaceModel::Klein, &q).is_err());
    }
}
