//! Exact JSON encodings: a rational is `[num, den]`, a quadratic element is a
//! rational when its `√−d` part vanishes and `[[a_num, a_den], [b_num, b_den]]`
//! otherwise. Integers that do not fit in `i64` are written as strings.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::cmlat::{AbelianModel, EndoQ, Mode, ModelSpec, Order};
use crate::error::{Error, Result};
use crate::exact::{QuadInt, Rat};

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

pub fn rat_json(r: &Rat) -> Value {
    json!([int_json(r.numer()), int_json(r.denom())])
}

pub fn quad_json(q: &QuadInt) -> Value {
    if q.b.is_zero() {
        rat_json(&q.a)
    } else {
        json!([rat_json(&q.a), rat_json(&q.b)])
    }
}

pub fn endo_json(x: &EndoQ) -> Value {
    Value::Array(
        (0..x.rows())
            .map(|i| Value::Array((0..x.cols()).map(|j| quad_json(&x[(i, j)])).collect()))
            .collect(),
    )
}

pub fn serialize_endo<S: Serializer>(x: &Option<EndoQ>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        None => s.serialize_none(),
        Some(m) => endo_json(m).serialize(s),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("{s:?} is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::Array(a) if a.len() == 2 && !a[0].is_array() => {
            let den = parse_int(&a[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(&a[0])?, den))
        }
        Value::Number(_) | Value::String(_) => Ok(Rat::from_integer(parse_int(v)?)),
        other => Err(Error::Parse(format!("expected [num, den], got {other}"))),
    }
}

pub fn parse_quad(v: &Value, d: u64) -> Result<QuadInt> {
    match v {
        Value::Array(a) if a.len() == 2 && a[0].is_array() => {
            Ok(QuadInt::new(parse_rat(&a[0])?, parse_rat(&a[1])?, d))
        }
        _ => Ok(QuadInt::from_rat(parse_rat(v)?, d)),
    }
}

/// On-disk model description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub d: u64,
    pub g: usize,
    #[serde(default)]
    pub glue: Vec<Vec<Value>>,
    pub mode: Mode,
    #[serde(default)]
    pub exponents: Option<Vec<u64>>,
    #[serde(default)]
    pub order: Order,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<AbelianModel> {
        if !crate::exact::is_squarefree(self.d) {
            return Err(Error::InvalidInput(format!("d = {} is not a positive squarefree integer", self.d)));
        }
        let glue = self
            .glue
            .iter()
            .map(|v| v.iter().map(|x| parse_quad(x, self.d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        AbelianModel::build(ModelSpec {
            d: self.d,
            g: self.g,
            glue,
            mode: self.mode,
            exponents: self.exponents.clone(),
            order: self.order,
        })
    }
}
