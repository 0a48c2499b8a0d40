//! Plain-text key file parsing: one `name=value` pair per line.
//!
//! Mandatory fields: `x0`, `lambda`, `beta`, `c0`, `K` (64 hex chars).
//! Optional fields with defaults: `y0_base` (0.41), `p` (0.47), `n0` (500),
//! `zeta` (3). Blank lines and `#` comments are ignored. Keys stay in a
//! file rather than on the command line so they never show up in process
//! listings.

use std::collections::HashMap;

use crate::cipher::CipherKey;
use crate::error::{Error, Result};
use crate::latin::LatinKey;
use crate::sbox::SBoxGenParams;

fn parse_field<T: std::str::FromStr>(fields: &HashMap<&str, &str>, name: &str) -> Result<T> {
    let raw = fields
        .get(name)
        .ok_or_else(|| Error::InvalidKey(format!("missing field: {name}")))?;
    raw.parse()
        .map_err(|_| Error::InvalidKey(format!("field {name} has invalid value {raw:?}")))
}

fn parse_optional<T: std::str::FromStr>(
    fields: &HashMap<&str, &str>,
    name: &str,
    default: T,
) -> Result<T> {
    match fields.get(name) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::InvalidKey(format!("field {name} has invalid value {raw:?}"))),
    }
}

/// Parses key file text into a validated [`CipherKey`].
pub fn parse_key_file(text: &str) -> Result<CipherKey> {
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidKey(format!("line {}: expected name=value", lineno + 1))
        })?;
        let (name, value) = (name.trim(), value.trim());
        if !matches!(
            name,
            "x0" | "lambda" | "beta" | "c0" | "K" | "y0_base" | "p" | "n0" | "zeta"
        ) {
            return Err(Error::InvalidKey(format!(
                "line {}: unknown field {name:?}",
                lineno + 1
            )));
        }
        if fields.insert(name, value).is_some() {
            return Err(Error::InvalidKey(format!(
                "line {}: duplicate field {name:?}",
                lineno + 1
            )));
        }
    }

    let defaults = SBoxGenParams::default();
    let key = CipherKey {
        x0: parse_field(&fields, "x0")?,
        lambda: parse_field(&fields, "lambda")?,
        beta: parse_field(&fields, "beta")?,
        c0: parse_field(&fields, "c0")?,
        latin_key: LatinKey::from_hex(
            fields
                .get("K")
                .ok_or_else(|| Error::InvalidKey("missing field: K".into()))?,
        )?,
        sbox_params: SBoxGenParams {
            y0_base: parse_optional(&fields, "y0_base", defaults.y0_base)?,
            p: parse_optional(&fields, "p", defaults.p)?,
            n0: parse_optional(&fields, "n0", defaults.n0)?,
            zeta: parse_optional(&fields, "zeta", defaults.zeta)?,
            ..defaults
        },
    };
    key.validate()?;
    Ok(key)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# test key
x0 = 0.23456
lambda = 3.99
beta = 4
c0 = 7
K = 12A34F56E78D90C31B72AF4835DC0981237654CD185A3FEB01CAE7259018FD14
";

    #[test]
    fn parses_full_key_with_defaults() {
        let key = parse_key_file(SAMPLE).unwrap();
        assert_eq!(key.x0, 0.23456);
        assert_eq!(key.lambda, 3.99);
        assert_eq!(key.beta, 4);
        assert_eq!(key.c0, 7);
        assert_eq!(key.latin_key.bytes()[0], 0x12);
        assert_eq!(key.sbox_params.y0_base, 0.41);
        assert_eq!(key.sbox_params.p, 0.47);
        assert_eq!(key.sbox_params.n0, 500);
        assert_eq!(key.sbox_params.zeta, 3);
        assert_eq!(key.sbox_params.count, 1000);
    }

    #[test]
    fn optional_overrides_apply() {
        let text = format!("{SAMPLE}y0_base=0.3\np=0.37\nn0=100\nzeta=2\n");
        let key = parse_key_file(&text).unwrap();
        assert_eq!(key.sbox_params.y0_base, 0.3);
        assert_eq!(key.sbox_params.p, 0.37);
        assert_eq!(key.sbox_params.n0, 100);
        assert_eq!(key.sbox_params.zeta, 2);
    }

    #[test]
    fn missing_mandatory_field_names_it() {
        let text = SAMPLE.lines().filter(|l| !l.starts_with("K =")).collect::<Vec<_>>().join("\n");
        let err = parse_key_file(&text).unwrap_err();
        assert!(err.to_string().contains('K'), "message was: {err}");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_key_file("x0 0.5\n").is_err());
        assert!(parse_key_file(&format!("{SAMPLE}bogus=1\n")).is_err());
        assert!(parse_key_file(&format!("{SAMPLE}x0=0.5\n")).is_err()); // duplicate
        assert!(parse_key_file(&SAMPLE.replace("0.23456", "nope")).is_err());
    }

    #[test]
    fn out_of_range_values_rejected() {
        assert!(parse_key_file(&SAMPLE.replace("3.99", "4.2")).is_err());
        assert!(parse_key_file(&SAMPLE.replace("beta = 4", "beta = 0")).is_err());
        assert!(parse_key_file(&SAMPLE.replace("c0 = 7", "c0 = 300")).is_err());
    }
}
