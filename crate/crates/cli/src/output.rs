//! Rendering of p-adic and rational values as JSON and CSV.

use num_rational::BigRational;
use padic_lq::padic::PadicNum;
use serde_json::{json, Value};

/// JSON form of a p-adic number:
/// `{ "p": int, "valuation": int|"inf", "digits": [d_0,…], "prec": int }`
/// with digits least significant first. A value that is zero to precision A
/// carries `valuation: A` (a lower bound) with empty digits and prec 0;
/// exact zero carries `valuation: "inf"`.
pub fn padic_to_json(x: &PadicNum) -> Value {
    let valuation = match (x.valuation(), x.valuation_lower_bound()) {
        (Some(v), _) => json!(v),
        (None, Some(bound)) => json!(bound),
        (None, None) => json!("inf"),
    };
    json!({
        "p": x.context().p(),
        "valuation": valuation,
        "digits": x.digits(),
        "prec": x.rel_precision(),
    })
}

/// Digit-list flattened to a base-p string, least significant digit first.
/// Digits are single characters for p < 10 and dot-separated otherwise
/// (two-digit digits would be ambiguous when concatenated).
pub fn digit_string(x: &PadicNum) -> String {
    let digits = x.digits();
    if x.context().p() < 10 {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// CSV cell triple for a p-adic value: valuation, digit string, prec.
pub fn padic_to_csv(x: &PadicNum) -> String {
    let valuation = match (x.valuation(), x.valuation_lower_bound()) {
        (Some(v), _) => v.to_string(),
        (None, Some(bound)) => bound.to_string(),
        (None, None) => "inf".to_string(),
    };
    format!("{valuation},{},{}", digit_string(x), x.rel_precision())
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
