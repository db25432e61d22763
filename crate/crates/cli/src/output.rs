//! JSON report types. Reals are written with 17 significant digits, which round-trips
//! every `f64`, so reports are byte-stable and recomputable from their own fields.

use hermlift::quadfield::{BinaryQuadraticForm, IdealClassRep};
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// An `f64` serialized as a JSON number with 17 significant digits (`null` if not finite).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            "null".to_string()
        };
        RawValue::from_string(text)
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl From<Complex64> for Complex {
    fn from(z: Complex64) -> Self {
        Self {
            re: Real(z.re),
            im: Real(z.im),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl From<&BinaryQuadraticForm> for Form {
    fn from(f: &BinaryQuadraticForm) -> Self {
        Self {
            a: f.a,
            b: f.b,
            c: f.c,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRep {
    pub form: Form,
    pub reduced: Form,
    pub norm: u64,
}

impl From<&IdealClassRep> for ClassRep {
    fn from(r: &IdealClassRep) -> Self {
        Self {
            form: (&r.form).into(),
            reduced: (&r.reduced).into(),
            norm: r.norm(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}
