use std::io::Read;

use shamsuddin_core::textio::parse_derivation;
use shamsuddin_core::{Derivation, Error, ParsedDerivation};

use crate::output::Failure;
use crate::Common;

/// Reads a path, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

pub fn derivation(common: &Common) -> Result<ParsedDerivation, Failure> {
    let text = match (&common.source.deriv, &common.source.input) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => read_source(path)?,
        (None, None) => unreachable!("clap requires an input source"),
    };
    Ok(parse_derivation(&text)?)
}

/// The input, which must be of Shamsuddin form.
pub fn shamsuddin(common: &Common) -> Result<Derivation, Failure> {
    match derivation(common)? {
        ParsedDerivation::Shamsuddin(d) => Ok(d),
        ParsedDerivation::Triangular(t) if t.n() == 0 => Err(Error::EmptyDerivation.into()),
        ParsedDerivation::Triangular(t) => {
            Err(t.to_shamsuddin().expect_err("not Shamsuddin").into())
        }
    }
}
