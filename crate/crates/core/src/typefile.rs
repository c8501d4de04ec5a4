//! Type descriptions read from JSON and the `key=value` session file.

use serde::{Deserialize, Serialize};

use crate::apprtype::{ApproxType, Cofinality, Settings, TypeKind};
use crate::curated;
use crate::error::{Error, Result};
use crate::hahn::{is_prime, SubfieldPredicate};
use crate::ordval::{parse_q, GroupValue, Q};
use crate::text::{parse_poly, parse_series};

/// Knobs shared by every command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub p: Option<u64>,
    /// Precision given to series literals that do not state one.
    pub precision: Option<Q>,
    /// Number of approximants kept from a generator.
    pub depth: Option<usize>,
    pub settings: Settings,
}

impl Session {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Precondition(format!("config key {key}: {what}"));
        let int = |v: &str| v.trim().parse::<usize>().map_err(|_| bad("expected a nonnegative integer"));
        match key.trim() {
            "p" => {
                let p = int(value)? as u64;
                if !is_prime(p) {
                    return Err(bad("not a prime"));
                }
                self.p = Some(p);
            }
            "precision" => self.precision = Some(parse_q(value.trim())?),
            "depth" => self.depth = Some(int(value)?),
            "window" => self.settings.window = int(value)?,
            "tail_depth" | "tail-depth" => self.settings.tail_depth = int(value)?,
            "margin" => self.settings.margin = positive(parse_q(value.trim())?).ok_or_else(|| bad("must be positive"))?,
            "margin_limit" | "margin-limit" => {
                self.settings.margin_limit =
                    positive(parse_q(value.trim())?).ok_or_else(|| bad("must be positive"))?
            }
            _ => return Err(bad("unknown key")),
        }
        Ok(())
    }

    /// Lines of `key = value`; `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Session> {
        let mut s = Session::default();
        s.merge_config(text)?;
        Ok(s)
    }

    pub fn merge_config(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("config line {}: expected key=value", no + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn prime(&self, given: Option<u64>) -> Result<u64> {
        let p = given.or(self.p).ok_or_else(|| Error::Precondition("no prime given (use --p)".into()))?;
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(p)
    }

    /// Parses a series, applying the session precision when none is written.
    pub fn series(&self, text: &str, p: u64) -> Result<crate::Series> {
        let s = parse_series(text, p)?;
        Ok(match (&self.precision, s.is_exact()) {
            (Some(pr), true) => s.with_cap(&GroupValue::Finite(pr.clone())),
            _ => s,
        })
    }
}

fn positive(x: Q) -> Option<Q> {
    (x > Q::from_integer(0.into())).then_some(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeSpec {
    Curated {
        curated: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
    },
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
        target: String,
        #[serde(default = "default_predicate")]
        predicate: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cofinality: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kind: Option<String>,
    },
}

fn default_predicate() -> String {
    "ppow".into()
}

impl TypeSpec {
    pub fn curated(name: &str, p: u64) -> Self {
        TypeSpec::Curated { curated: name.into(), p: Some(p) }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
    }

    pub fn prime(&self, session: &Session) -> Result<u64> {
        match self {
            TypeSpec::Curated { p, .. } | TypeSpec::Explicit { p, .. } => session.prime(*p),
        }
    }

    pub fn build(&self, session: &Session) -> Result<ApproxType> {
        let p = self.prime(session)?;
        let ty = match self {
            TypeSpec::Curated { curated: name, .. } => curated::by_name(name, p).ok_or_else(|| {
                Error::Precondition(format!(
                    "unknown curated type {name:?} for p = {p}; known: {}",
                    curated::NAMES.join(", ")
                ))
            })?,
            TypeSpec::Explicit { target, predicate, points, cofinality, kind, .. } => {
                let target = session.series(target, p)?;
                let ground = SubfieldPredicate::from_name(predicate, p)?;
                let mut ty = match points {
                    None => ApproxType::truncations(target, ground)?,
                    Some(pts) => {
                        let pts = pts.iter().map(|s| parse_series(s, p)).collect::<Result<Vec<_>>>()?;
                        ApproxType::from_points(target, ground, pts)?
                    }
                };
                if let Some(c) = cofinality {
                    if let Some(c) = parse_cofinality(c)? {
                        ty = ty.with_cofinality(c);
                    }
                }
                if let Some(k) = kind {
                    ty = ty.with_kind(parse_kind(k, p)?);
                }
                ty
            }
        };
        Ok(match session.depth {
            Some(d) => ty.limited_to(d),
            None => ty,
        })
    }
}

/// `None` keeps the generator's own choice.
fn parse_cofinality(text: &str) -> Result<Option<Cofinality>> {
    let t = text.trim();
    Ok(Some(match t {
        "auto" => return Ok(None),
        "exhaustive" => Cofinality::Exhaustive,
        "precision-limited" => Cofinality::PrecisionLimited,
        "undeclared" => Cofinality::Undeclared,
        _ => match t.strip_prefix("limit:") {
            Some(v) => Cofinality::Limit(v.trim().parse()?),
            None => return Err(Error::parse(0, format!("unknown cofinality marker {t:?}"))),
        },
    }))
}

fn parse_kind(text: &str, p: u64) -> Result<TypeKind> {
    let t = text.trim();
    Ok(match t {
        "transcendental" => TypeKind::Transcendental,
        "unspecified" => TypeKind::Unspecified,
        _ => match t.strip_prefix("algebraic:") {
            Some(f) => TypeKind::Algebraic(parse_poly(f, p)?),
            None => return Err(Error::parse(0, format!("unknown kind marker {t:?}"))),
        },
    })
}
