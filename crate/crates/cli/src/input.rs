use std::fs;
use std::io::{self, Read};

use anyhow::{bail, Context, Result};
use autplane::grading::{MVec, NVec};
use serde::de::DeserializeOwned;

/// Text of an argument: `-` reads stdin, text starting with `{` is taken
/// literally, anything else is a file path.
pub fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

pub fn read_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = read_source(arg)?;
    serde_json::from_str(&text).with_context(|| format!("malformed {what} JSON"))
}

fn pair(s: &str) -> Result<(i64, i64)> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        bail!("expected two comma-separated integers, got {s:?}");
    };
    Ok((
        a.parse().context("first coordinate")?,
        b.parse().context("second coordinate")?,
    ))
}

pub fn parse_vec(s: &str) -> Result<MVec> {
    let (a, b) = pair(s)?;
    Ok(MVec(a, b))
}

/// `x` for `(1,0)`, `y` for `(0,1)`, or an explicit pair.
pub fn parse_ray(s: &str) -> Result<NVec> {
    let ray = match s.trim() {
        "x" => NVec::RAY_X,
        "y" => NVec::RAY_Y,
        other => {
            let (a, b) = pair(other)?;
            NVec(a, b)
        }
    };
    if ray != NVec::RAY_X && ray != NVec::RAY_Y {
        bail!("ray must be (1,0) or (0,1), got {ray}");
    }
    Ok(ray)
}
