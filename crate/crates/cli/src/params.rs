//! Parsing of suite overrides, scalars, windows and lattice arguments.

use std::collections::BTreeMap;

use helly_core::arith::ExactScalar;
use helly_core::lattice::{LatticeSpec, Window};

use crate::defaults;
use crate::CliError;

/// Effective suite parameters: the defaults table overlaid with overrides.
#[derive(Clone, Debug, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn for_suite(suite: &str, overrides: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let table = defaults::suite(suite).ok_or_else(|| CliError::Usage(format!("unknown suite {suite:?}")))?;
        let mut values: BTreeMap<String, String> =
            table.params.iter().map(|p| (p.key.to_string(), p.default.to_string())).collect();
        for (k, v) in overrides {
            if !values.contains_key(k) {
                let known: Vec<&str> = table.params.iter().map(|p| p.key).collect();
                return Err(CliError::Usage(format!("suite {suite} has no parameter {k:?} (known: {})", known.join(", "))));
            }
            values.insert(k.clone(), v.clone());
        }
        Ok(Params { values })
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_default()
    }

    pub fn int(&self, key: &str) -> Result<i64, CliError> {
        self.raw(key).parse().map_err(|_| bad(key, self.raw(key)))
    }

    pub fn uint(&self, key: &str) -> Result<usize, CliError> {
        self.raw(key).parse().map_err(|_| bad(key, self.raw(key)))
    }

    pub fn float(&self, key: &str) -> Result<f64, CliError> {
        self.raw(key).parse().map_err(|_| bad(key, self.raw(key)))
    }

    pub fn scalar(&self, key: &str) -> Result<ExactScalar, CliError> {
        parse_scalar(self.raw(key)).map_err(|_| bad(key, self.raw(key)))
    }

    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        split_list(self.raw(key)).iter().map(|s| s.parse().map_err(|_| bad(key, s))).collect()
    }

    pub fn scalar_list(&self, key: &str) -> Result<Vec<ExactScalar>, CliError> {
        split_list(self.raw(key)).iter().map(|s| parse_scalar(s).map_err(|_| bad(key, s))).collect()
    }

    pub fn is_set(&self, key: &str) -> bool {
        !self.raw(key).is_empty()
    }
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Usage(format!("invalid value {value:?} for {key}"))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// Exact scalar; `phi` names the golden ratio.
pub fn parse_scalar(s: &str) -> Result<ExactScalar, CliError> {
    match s.trim() {
        "phi" => Ok(ExactScalar::golden_ratio()),
        t => t.parse().map_err(|e| CliError::Usage(format!("{e}"))),
    }
}

/// `--key value`, `--key=value` and bare `--flag` tokens.
pub fn parse_overrides(tokens: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        let Some(body) = tok.strip_prefix("--") else {
            return Err(CliError::Usage(format!("unexpected argument {tok:?}")));
        };
        let (key, value) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => match tokens.get(i + 1) {
                Some(next) if !next.starts_with("--") => {
                    i += 1;
                    (body.to_string(), next.clone())
                }
                _ => (body.to_string(), "true".to_string()),
            },
        };
        if key.is_empty() {
            return Err(CliError::Usage(format!("malformed option {tok:?}")));
        }
        out.insert(key, value);
        i += 1;
    }
    Ok(out)
}

fn parse_range<T>(s: &str, item: impl Fn(&str) -> Result<T, CliError>) -> Result<(T, T), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("window axis {s:?} is not of the form lo..hi")))?;
    Ok((item(a)?, item(b)?))
}

/// Comma-separated `lo..hi` axes; a single axis is repeated `d` times.
pub fn parse_box_window(s: &str, d: usize) -> Result<Window, CliError> {
    let mut bounds: Vec<(ExactScalar, ExactScalar)> =
        split_list(s).iter().map(|a| parse_range(a, parse_scalar)).collect::<Result<_, _>>()?;
    if bounds.len() == 1 && d > 1 {
        bounds = vec![bounds[0].clone(); d];
    }
    Ok(Window::Box { bounds })
}

pub fn parse_exp_window(s: &str, d: usize) -> Result<Window, CliError> {
    let int = |x: &str| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad exponent {x:?}")));
    let mut bounds: Vec<(i64, i64)> = split_list(s).iter().map(|a| parse_range(a, int)).collect::<Result<_, _>>()?;
    if bounds.len() == 1 && d > 1 {
        bounds = vec![bounds[0]; d];
    }
    Ok(Window::Exponent { bounds })
}

/// Inline JSON, or `@path` to read it from a file.
pub fn read_json_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn parse_lattice(arg: &str) -> Result<LatticeSpec, CliError> {
    let text = read_json_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid lattice: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn overrides() {
        let o = parse_overrides(&toks("--alpha 101/100 --d=2 --timings --k 10")).unwrap();
        assert_eq!(o["alpha"], "101/100");
        assert_eq!(o["d"], "2");
        assert_eq!(o["timings"], "true");
        assert_eq!(o["k"], "10");
        assert!(parse_overrides(&toks("alpha 2")).is_err());
    }

    #[test]
    fn windows() {
        let w = parse_exp_window("0..6", 2).unwrap();
        assert_eq!(w, Window::exponent_cube(0, 6, 2));
        let w = parse_box_window("-1..8", 2).unwrap();
        assert_eq!(w, Window::cube(-1, 8, 2));
        let w = parse_box_window("0..1,2..3", 2).unwrap();
        assert_eq!(w, Window::int_box(&[(0, 1), (2, 3)]));
        assert!(parse_box_window("0-1", 1).is_err());
    }

    #[test]
    fn suite_params() {
        let mut o = BTreeMap::new();
        o.insert("dmax".to_string(), "4".to_string());
        let p = Params::for_suite("hol-cross", &o).unwrap();
        assert_eq!(p.uint("dmax").unwrap(), 4);
        o.insert("nonsense".to_string(), "1".to_string());
        assert!(matches!(Params::for_suite("hol-cross", &o), Err(CliError::Usage(_))));
        assert!(Params::for_suite("no-such-suite", &BTreeMap::new()).is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("phi").unwrap(), ExactScalar::golden_ratio());
        assert_eq!(parse_scalar("3/2").unwrap(), ExactScalar::ratio(3, 2));
        assert!(parse_scalar("x").is_err());
    }
}
