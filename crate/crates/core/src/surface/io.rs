//! Text formats: surface files (TOML with tables `f` and `g`) and point strings.

use std::str::FromStr;

use crate::error::{Dp2Error, Result};
use crate::exactalg::{Rational, Rationals, TernForm};

use super::SurfaceDP2;

fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Dp2Error::Parse(format!("not a rational number: {s:?}")))
}

fn parse_form(v: Option<&toml::Value>, name: &str, degree: u32) -> Result<TernForm<Rational>> {
    let Some(v) = v else {
        return Ok(TernForm::zero(degree));
    };
    let entries = v.as_array().ok_or_else(|| Dp2Error::Parse(format!("`{name}` must be an array")))?;
    let mut terms = Vec::new();
    for e in entries {
        let bad = || Dp2Error::Parse(format!("`{name}` entries look like [i, j, k, \"num/den\"], got {e}"));
        let a = e.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
        let mut exps = [0u32; 3];
        for (slot, x) in exps.iter_mut().zip(a) {
            *slot = x.as_integer().and_then(|n| u32::try_from(n).ok()).ok_or_else(bad)?;
        }
        let c = match &a[3] {
            toml::Value::String(s) => parse_rational(s)?,
            toml::Value::Integer(n) => Rational::from_integer((*n).into()),
            _ => return Err(bad()),
        };
        terms.push((exps, c));
    }
    TernForm::from_terms(&Rationals, degree, terms).map_err(|_| Dp2Error::WrongDegrees)
}

/// Parses a surface document; keys other than `f` and `g` are ignored so the
/// same file can carry a `[run]` configuration table.
pub fn parse_surface_toml(text: &str) -> Result<SurfaceDP2> {
    let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| Dp2Error::Parse(e.to_string()))?;
    let f = parse_form(doc.get("f"), "f", 2)?;
    let g = parse_form(doc.get("g"), "g", 4)?;
    SurfaceDP2::validate(f, g)
}

/// The surface as a document accepted by [`parse_surface_toml`].
pub fn surface_to_toml(s: &SurfaceDP2) -> String {
    let fmt = |form: &TernForm<Rational>| {
        let items: Vec<String> = form
            .terms()
            .iter()
            .rev()
            .map(|(e, c)| format!("[{}, {}, {}, \"{}\"]", e[0], e[1], e[2], c))
            .collect();
        format!("[{}]", items.join(", "))
    };
    format!("f = {}\ng = {}\n", fmt(s.f()), fmt(s.g()))
}

/// Parses `"x:y:z:w"` with integer or `num/den` entries.
pub fn parse_point(s: &str) -> Result<([Rational; 3], Rational)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(Dp2Error::Parse(format!("a point has the form x:y:z:w, got {s:?}")));
    }
    let v: Vec<Rational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
    Ok(([v[0].clone(), v[1].clone(), v[2].clone()], v[3].clone()))
}

/// A surface together with the raw document it came from.
#[derive(Clone, Debug)]
pub struct SurfaceFile {
    pub surface: SurfaceDP2,
    pub document: toml::Table,
}

impl SurfaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let surface = parse_surface_toml(text)?;
        let document = text.parse().map_err(|e: toml::de::Error| Dp2Error::Parse(e.to_string()))?;
        Ok(SurfaceFile { surface, document })
    }
}
