//! Number formatting and writers shared by the subcommands.
//!
//! Every float is printed with 17 significant digits (C's `%.17g`), which is
//! enough to round-trip any `f64`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use anyhow::Context;
use serde::{Serialize, Serializer};

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 ..= 1e17`.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn number(x: f64) -> serde_json::Number {
    serde_json::Number::from_str(&fmt17(x)).expect("fmt17 emits valid JSON numbers")
}

pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    number(*x).serialize(s)
}

pub fn sig17_vec<S: Serializer>(v: &[f64; 3], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| number(*x)))
}

/// Row-major matrix of `[re, im]` pairs.
pub fn sig17_matrix<S: Serializer>(
    m: &[[(f64, f64); 2]; 2],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| {
        row.iter()
            .map(|c| [number(c.0), number(c.1)])
            .collect::<Vec<_>>()
    }))
}

/// Standard output, or a file when a path is given.
pub fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json(out: &mut dyn Write, value: &impl serde::Serialize) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_17g() {
        // reference values from C printf("%.17g")
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (0.1, "0.10000000000000001"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (std::f64::consts::FRAC_PI_2, "1.5707963267948966"),
            (-2.5, "-2.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1.2246467991473532e-16, "1.2246467991473532e-16"),
            (1e20, "1e+20"),
            (123456.0, "123456"),
            (0.0001, "0.0001"),
            (6.123233995736766e-17, "6.123233995736766e-17"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt17(x), want, "{x:e}");
        }
        assert_eq!(fmt17(0.0), "0");
    }

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), -7.25e-9, 1e300, 5e-324] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }
}
