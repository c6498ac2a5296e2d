use alloc::string::String;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::report::ParamValue;
use crate::parse::parse_complex;

// Numbers stay numbers, complex values are written as "a+bi".
impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Real(v) => s.serialize_f64(*v),
            other => s.collect_str(other),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Number(f64),
    Pair([f64; 2]),
    Text(String),
}

/// Accepts a number, a `[re, im]` pair, a complex string such as `"2+0.5i"`,
/// or any other string as text.
impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Raw::deserialize(d)? {
            Raw::Number(v) => ParamValue::Real(v),
            Raw::Pair([re, im]) => {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(de::Error::custom("complex components must be finite"));
                }
                Complex64::new(re, im).into()
            }
            Raw::Text(s) => match parse_complex(&s) {
                Ok(z) => z.into(),
                Err(_) => ParamValue::Text(s),
            },
        })
    }
}
