//! JSON multivector documents: the wire format of the `gak` CLI.
//!
//! A document is either a full object `{"algebra": "r301", "coeffs": ...}`
//! or bare coefficients with the algebra supplied out of band. Coefficients
//! come as a map from blade label to value (`{"1": 1, "e12": 0.5}`) or as a
//! dense array in the algebra's packed order.
//!
//! Dense arrays are resolved by length: the full 2^n canonical order is
//! always accepted; the four featured algebras additionally accept their
//! normative even-subalgebra order (8 or 16 slots), and `r301` accepts the
//! 6-slot bivector order `[e01,e02,e03,e12,e31,e23]`.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::kernels::{EvenLayout, BIVECTOR_R301, EVEN_4D, EVEN_R301, EVEN_R41};
use crate::multivector::Multivector;
use crate::signature::{Blade, Signature};

/// Errors from parsing or validating a multivector document. These map to
/// CLI exit code 1, unlike mathematical failures which map to 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unknown algebra tag {0:?} (expected r3, r4, r31, r301, r41 or custom:p,q,r)")]
    UnknownAlgebra(String),
    #[error("no algebra given: pass --algebra or embed an \"algebra\" field")]
    MissingAlgebra,
    #[error("document algebra {doc:?} conflicts with requested algebra {flag:?}")]
    AlgebraMismatch { doc: String, flag: String },
    #[error("invalid blade label {0:?}")]
    BadLabel(String),
    #[error("dense array of length {got} does not match any packed order of {tag} (accepted: {accepted})")]
    BadLength { got: usize, tag: String, accepted: String },
    #[error("coefficient for {0:?} is not a finite number")]
    BadValue(String),
    #[error("document must be an object or an array")]
    BadShape,
}

/// Algebra tags accepted on the CLI and in documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraTag {
    R3,
    R4,
    R31,
    R301,
    R41,
    Custom { p: u8, q: u8, r: u8 },
}

impl AlgebraTag {
    pub fn signature(self) -> Signature {
        match self {
            AlgebraTag::R3 => Signature::r3(),
            AlgebraTag::R4 => Signature::r4(),
            AlgebraTag::R31 => Signature::r31(),
            AlgebraTag::R301 => Signature::r301(),
            AlgebraTag::R41 => Signature::r41(),
            AlgebraTag::Custom { p, q, r } => {
                Signature::custom(p as usize, q as usize, r as usize)
            }
        }
    }

    /// Even-subalgebra packed layout, for the four featured algebras.
    pub fn even_layout8(self) -> Option<&'static EvenLayout<8>> {
        match self {
            AlgebraTag::R4 | AlgebraTag::R31 => Some(&EVEN_4D),
            AlgebraTag::R301 => Some(&EVEN_R301),
            _ => None,
        }
    }

    pub fn even_layout16(self) -> Option<&'static EvenLayout<16>> {
        match self {
            AlgebraTag::R41 => Some(&EVEN_R41),
            _ => None,
        }
    }

    pub fn has_fast_normalize(self) -> bool {
        matches!(
            self,
            AlgebraTag::R4 | AlgebraTag::R31 | AlgebraTag::R301 | AlgebraTag::R41
        )
    }
}

impl FromStr for AlgebraTag {
    type Err = DocError;
    fn from_str(s: &str) -> Result<Self, DocError> {
        match s {
            "r3" => Ok(AlgebraTag::R3),
            "r4" => Ok(AlgebraTag::R4),
            "r31" => Ok(AlgebraTag::R31),
            "r301" => Ok(AlgebraTag::R301),
            "r41" => Ok(AlgebraTag::R41),
            _ => {
                let rest = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| DocError::UnknownAlgebra(s.to_string()))?;
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(DocError::UnknownAlgebra(s.to_string()));
                }
                let nums: Result<Vec<u8>, _> =
                    parts.iter().map(|p| p.trim().parse::<u8>()).collect();
                let nums = nums.map_err(|_| DocError::UnknownAlgebra(s.to_string()))?;
                let (p, q, r) = (nums[0], nums[1], nums[2]);
                let n = p as usize + q as usize + r as usize;
                if !(1..=crate::signature::MAX_DIM).contains(&n) {
                    return Err(DocError::UnknownAlgebra(s.to_string()));
                }
                Ok(AlgebraTag::Custom { p, q, r })
            }
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::R3 => write!(f, "r3"),
            AlgebraTag::R4 => write!(f, "r4"),
            AlgebraTag::R31 => write!(f, "r31"),
            AlgebraTag::R301 => write!(f, "r301"),
            AlgebraTag::R41 => write!(f, "r41"),
            AlgebraTag::Custom { p, q, r } => write!(f, "custom:{p},{q},{r}"),
        }
    }
}

/// Parses a blade label like `"1"`, `"e12"` or `"e031"` into a canonical
/// blade and the reordering sign of the written permutation.
pub fn parse_label(sig: Signature, label: &str) -> Result<(Blade, f64), DocError> {
    if label == "1" {
        return Ok((Blade::SCALAR, 1.0));
    }
    let digits = label
        .strip_prefix('e')
        .ok_or_else(|| DocError::BadLabel(label.to_string()))?;
    if digits.is_empty() || digits.len() > sig.n() {
        return Err(DocError::BadLabel(label.to_string()));
    }
    let mut mask: u32 = 0;
    let mut indices = Vec::with_capacity(digits.len());
    for ch in digits.chars() {
        let digit = ch
            .to_digit(10)
            .ok_or_else(|| DocError::BadLabel(label.to_string()))?;
        let idx = sig
            .index_of_label(digit as usize)
            .ok_or_else(|| DocError::BadLabel(label.to_string()))?;
        if mask & (1 << idx) != 0 {
            return Err(DocError::BadLabel(label.to_string()));
        }
        mask |= 1 << idx;
        indices.push(idx);
    }
    let mut inversions = 0usize;
    for i in 0..indices.len() {
        for j in (i + 1)..indices.len() {
            if indices[i] > indices[j] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((Blade(mask), sign))
}

/// Canonical label of a blade under a tag's conventions, with the sign of
/// the labelled orientation relative to the canonical one. Everything is
/// ascending except r301's e31 slot.
pub fn blade_label(tag: AlgebraTag, sig: Signature, blade: Blade) -> (String, f64) {
    if blade.0 == 0 {
        return ("1".to_string(), 1.0);
    }
    if tag == AlgebraTag::R301 && blade.0 == 0b1010 {
        return ("e31".to_string(), -1.0);
    }
    let mut label = String::from("e");
    for idx in blade.indices() {
        label.push_str(&sig.basis_label(idx).to_string());
    }
    (label, 1.0)
}

fn resolve_tag(
    doc_algebra: Option<&str>,
    flag: Option<AlgebraTag>,
) -> Result<AlgebraTag, DocError> {
    match (doc_algebra, flag) {
        (Some(s), Some(f)) => {
            let doc_tag: AlgebraTag = s.parse()?;
            if doc_tag != f {
                return Err(DocError::AlgebraMismatch {
                    doc: s.to_string(),
                    flag: f.to_string(),
                });
            }
            Ok(doc_tag)
        }
        (Some(s), None) => s.parse(),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(DocError::MissingAlgebra),
    }
}

fn number_to_f64(label: &str, v: &Value) -> Result<f64, DocError> {
    let x = v.as_f64().ok_or_else(|| DocError::BadValue(label.to_string()))?;
    if !x.is_finite() {
        return Err(DocError::BadValue(label.to_string()));
    }
    Ok(x)
}

fn from_map(tag: AlgebraTag, map: &Map<String, Value>) -> Result<Multivector, DocError> {
    let sig = tag.signature();
    let mut mv = Multivector::zero(sig);
    for (label, value) in map {
        let (blade, sign) = parse_label(sig, label)?;
        let x = number_to_f64(label, value)?;
        mv.coeffs_mut()[blade.0 as usize] += sign * x;
    }
    Ok(mv)
}

fn from_dense(tag: AlgebraTag, values: &[Value]) -> Result<Multivector, DocError> {
    let sig = tag.signature();
    let mut data = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        data.push(number_to_f64(&format!("[{i}]"), v)?);
    }

    if data.len() == sig.blade_count() {
        return Ok(Multivector::from_coeffs(sig, data));
    }
    if data.len() == 8 {
        if let Some(layout) = tag.even_layout8() {
            let arr: [f64; 8] = data.try_into().expect("length checked");
            return Ok(layout.unpack(sig, &arr));
        }
    }
    if data.len() == 16 {
        if let Some(layout) = tag.even_layout16() {
            let arr: [f64; 16] = data.try_into().expect("length checked");
            return Ok(layout.unpack(sig, &arr));
        }
    }
    if data.len() == 6 && tag == AlgebraTag::R301 {
        let arr: [f64; 6] = data.try_into().expect("length checked");
        return Ok(BIVECTOR_R301.unpack(sig, &arr));
    }

    let mut accepted = format!("{}", sig.blade_count());
    if tag.even_layout8().is_some() {
        accepted.push_str(", 8");
    }
    if tag.even_layout16().is_some() {
        accepted.push_str(", 16");
    }
    if tag == AlgebraTag::R301 {
        accepted.push_str(", 6");
    }
    Err(DocError::BadLength {
        got: data.len(),
        tag: tag.to_string(),
        accepted,
    })
}

/// Parses a document from an already-decoded JSON value.
pub fn parse_value(
    v: &Value,
    flag: Option<AlgebraTag>,
) -> Result<(AlgebraTag, Multivector), DocError> {
    match v {
        Value::Object(map) if map.contains_key("coeffs") => {
            let doc_algebra = match map.get("algebra") {
                None => None,
                Some(Value::String(s)) => Some(s.as_str()),
                Some(_) => return Err(DocError::UnknownAlgebra("<non-string>".into())),
            };
            let tag = resolve_tag(doc_algebra, flag)?;
            match &map["coeffs"] {
                Value::Object(coeffs) => Ok((tag, from_map(tag, coeffs)?)),
                Value::Array(values) => Ok((tag, from_dense(tag, values)?)),
                _ => Err(DocError::BadShape),
            }
        }
        Value::Object(map) => {
            let tag = resolve_tag(None, flag)?;
            Ok((tag, from_map(tag, map)?))
        }
        Value::Array(values) => {
            let tag = resolve_tag(None, flag)?;
            Ok((tag, from_dense(tag, values)?))
        }
        _ => Err(DocError::BadShape),
    }
}

/// Parses a document from JSON text. Never panics, whatever the input.
pub fn parse_doc(
    text: &str,
    flag: Option<AlgebraTag>,
) -> Result<(AlgebraTag, Multivector), DocError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
    parse_value(&value, flag)
}

fn f64_to_number(x: f64) -> Number {
    Number::from_f64(x).expect("finite coefficient")
}

/// Coefficient map in label form, zeros omitted; round-trips losslessly for
/// finite doubles.
pub fn coeffs_map(tag: AlgebraTag, mv: &Multivector) -> Value {
    let sig = mv.sig();
    let mut map = Map::new();
    for (mask, &c) in mv.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let (label, sign) = blade_label(tag, sig, Blade(mask as u32));
        map.insert(label, Value::Number(f64_to_number(sign * c)));
    }
    Value::Object(map)
}

/// The multivector has exactly zero content outside the layout's slots;
/// emission may only choose a packed order on an exact fit, never on a
/// tolerance, or large-magnitude documents would drop small slots.
fn fits_exactly<const N: usize>(layout: &EvenLayout<N>, mv: &Multivector) -> bool {
    let mut in_layout = [false; 64];
    for m in layout.masks {
        in_layout[m as usize] = true;
    }
    mv.coeffs()
        .iter()
        .enumerate()
        .all(|(m, &c)| c == 0.0 || in_layout[m])
}

fn dense_array<const N: usize>(packed: &[f64; N]) -> Value {
    Value::Array(packed.iter().map(|&x| Value::Number(f64_to_number(x))).collect())
}

/// Dense coefficients in the tag's tightest packed order that fits the
/// content exactly: even-packed when the element is even, r301's bivector
/// order for pure PGA bivectors, the full canonical array otherwise.
pub fn coeffs_dense(tag: AlgebraTag, mv: &Multivector) -> Value {
    if tag == AlgebraTag::R301
        && mv.coeffs().iter().any(|&c| c != 0.0)
        && fits_exactly(&BIVECTOR_R301, mv)
    {
        return dense_array(&BIVECTOR_R301.pack(mv).expect("exact fit packs"));
    }
    if let Some(layout) = tag.even_layout8() {
        if fits_exactly(layout, mv) {
            return dense_array(&layout.pack(mv).expect("exact fit packs"));
        }
    }
    if let Some(layout) = tag.even_layout16() {
        if fits_exactly(layout, mv) {
            return dense_array(&layout.pack(mv).expect("exact fit packs"));
        }
    }
    Value::Array(
        mv.coeffs()
            .iter()
            .map(|&x| Value::Number(f64_to_number(x)))
            .collect(),
    )
}

/// Full document `{"algebra": ..., "coeffs": ...}`.
pub fn emit_doc(tag: AlgebraTag, mv: &Multivector, dense: bool) -> Value {
    let coeffs = if dense {
        coeffs_dense(tag, mv)
    } else {
        coeffs_map(tag, mv)
    };
    let mut map = Map::new();
    map.insert("algebra".into(), Value::String(tag.to_string()));
    map.insert("coeffs".into(), coeffs);
    Value::Object(map)
}
