//! The versioned JSON input format for a system.
//!
//! ```json
//! {
//!   "version": 1,
//!   "role": "touching",
//!   "n": 3,
//!   "ratios": ["1/5", "1/5", "1/5"],
//!   "translations": ["0", "3/5", "4/5"]
//! }
//! ```
//!
//! A value is either an expression string or a product
//! `{"bases": [...], "exps": [...], "scalar": "..."}` of declared bases.
//! Translations may be omitted for the dust role, in which case the
//! equally spaced system is built.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactnum::{parse_ratio, parse_real, BaseSymbol, BaseTable, ExactRatio, NumError, Real};
use crate::ifscore::{canonical_dust, validate, Ifs, IfsSpec, Role, SpecError};

pub const SPEC_VERSION: u32 = 1;

const MAX_MAPS: usize = 64;
const MAX_EXPONENT: i64 = 256;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("{0}")]
    Field(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocRole {
    Touching,
    Dust,
}

impl From<DocRole> for Role {
    fn from(r: DocRole) -> Role {
        match r {
            DocRole::Touching => Role::Touching,
            DocRole::Dust => Role::Dust,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub bases: Vec<String>,
    pub exps: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Expr(String),
    Product(Product),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredBase {
    pub symbol: String,
    /// Decimal expansion; its length fixes the enclosure precision.
    pub digits: String,
    /// Must be `true`: bases are taken as multiplicatively independent.
    pub independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    pub role: DocRole,
    pub n: usize,
    pub ratios: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translations: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_bases: Vec<DeclaredBase>,
    /// Assertion that `μ_2, μ_3` are algebraically independent (four-map rule).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub declared_independence: bool,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: SpecDocument = serde_json::from_str(text)?;
        if doc.version != SPEC_VERSION {
            return Err(DocumentError::Version(doc.version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// The document describing `spec`, with every value written as a string.
    pub fn from_spec(spec: &IfsSpec) -> Self {
        let strings = |v: &mut dyn Iterator<Item = String>| v.map(Value::Expr).collect();
        let declared_bases = spec
            .table()
            .map(|t| {
                t.symbols()
                    .iter()
                    .map(|s| DeclaredBase {
                        symbol: s.name.clone(),
                        digits: s.digits.clone(),
                        independent: true,
                    })
                    .collect()
            })
            .unwrap_or_default();
        SpecDocument {
            version: SPEC_VERSION,
            role: match spec.role() {
                Role::Touching => DocRole::Touching,
                Role::Dust => DocRole::Dust,
            },
            n: spec.n(),
            ratios: strings(&mut spec.ratios().iter().map(|r| r.value().to_string())),
            translations: Some(strings(&mut spec.translations().iter().map(|t| t.to_string()))),
            declared_bases,
            declared_independence: false,
        }
    }

    fn table(&self) -> Result<Option<Arc<BaseTable>>, DocumentError> {
        if self.declared_bases.is_empty() {
            return Ok(None);
        }
        let mut symbols = Vec::with_capacity(self.declared_bases.len());
        for b in &self.declared_bases {
            if !b.independent {
                return Err(DocumentError::Field(format!(
                    "base `{}`: only multiplicatively independent bases are supported",
                    b.symbol
                )));
            }
            symbols.push(BaseSymbol::new(&b.symbol, &b.digits)?);
        }
        Ok(Some(Arc::new(BaseTable::new(symbols)?)))
    }

    /// Parses and validates the system.
    pub fn to_spec(&self) -> Result<IfsSpec, DocumentError> {
        if self.n > MAX_MAPS {
            return Err(DocumentError::Field(format!("at most {MAX_MAPS} maps are supported")));
        }
        if self.ratios.len() != self.n {
            return Err(DocumentError::Field(format!(
                "n = {} but {} ratios",
                self.n,
                self.ratios.len()
            )));
        }
        let table = self.table()?;
        let ratios = self
            .ratios
            .iter()
            .map(|v| value_ratio(v, table.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let role = Role::from(self.role);
        Ok(match &self.translations {
            Some(ts) => {
                if ts.len() != self.n {
                    return Err(DocumentError::Field(format!(
                        "n = {} but {} translations",
                        self.n,
                        ts.len()
                    )));
                }
                let ts = ts
                    .iter()
                    .map(|v| value_real(v, table.as_ref()))
                    .collect::<Result<Vec<_>, _>>()?;
                validate(ratios, ts, role)?
            }
            None if role == Role::Dust => canonical_dust(&ratios)?,
            None => return Err(DocumentError::Field("a touching system needs translations".into())),
        })
    }

    pub fn to_ifs(&self) -> Result<Ifs, DocumentError> {
        Ok(Ifs::new(self.to_spec()?))
    }
}

fn value_real(v: &Value, table: Option<&Arc<BaseTable>>) -> Result<Real, DocumentError> {
    match v {
        Value::Expr(s) => Ok(parse_real(s, table)?),
        Value::Product(p) => {
            if p.bases.len() != p.exps.len() {
                return Err(DocumentError::Field(format!(
                    "{} bases but {} exponents",
                    p.bases.len(),
                    p.exps.len()
                )));
            }
            let table = table.ok_or_else(|| DocumentError::Field("no bases declared".into()))?;
            let mut acc = match &p.scalar {
                Some(s) => parse_real(s, Some(table))?,
                None => Real::one(),
            };
            for (name, &e) in p.bases.iter().zip(&p.exps) {
                if e.abs() > MAX_EXPONENT {
                    return Err(DocumentError::Field(format!("exponent {e} is too large")));
                }
                let i = table
                    .index_of(name)
                    .ok_or_else(|| DocumentError::Field(format!("undeclared base `{name}`")))?;
                let b = Real::base(table, i);
                let pw = b.pow(e.unsigned_abs() as u32);
                acc = if e < 0 { acc.checked_div(&pw)? } else { &acc * &pw };
            }
            Ok(acc)
        }
    }
}

fn value_ratio(v: &Value, table: Option<&Arc<BaseTable>>) -> Result<ExactRatio, DocumentError> {
    match v {
        Value::Expr(s) => Ok(parse_ratio(s, table)?),
        Value::Product(_) => {
            let r = ExactRatio::new(value_real(v, table)?)?;
            if !r.is_contraction()? {
                return Err(DocumentError::Field(format!("ratio {} is not below one", r.value())));
            }
            Ok(r)
        }
    }
}
