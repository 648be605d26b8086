//! Verification reports, one JSON line each.

use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;

use crate::rational::{self, Rational};

/// Outcome of checking one property over many trials.
///
/// `failures == 0` exactly when `witness` is absent. `worst_margin` is the
/// smallest `bound - value` seen, for properties that are inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub property: String,
    pub trials: u64,
    pub failures: u64,
    #[serde(with = "rational::serde_opt")]
    pub worst_margin: Option<Rational>,
    pub witness: Option<Value>,
    pub seed: Option<u64>,
    /// Statistical properties raise flags, never hard failures.
    pub statistical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>, property: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            property: property.into(),
            trials: 0,
            failures: 0,
            worst_margin: None,
            witness: None,
            seed: None,
            statistical: false,
            detail: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records a pass/fail trial.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Records `value <= bound`, tracking the margin `bound - value`.
    pub fn check_le(&mut self, value: &Rational, bound: &Rational, witness: impl FnOnce() -> Value) {
        let margin = bound - value;
        let ok = !margin.is_negative();
        if self.worst_margin.as_ref().is_none_or(|w| margin < *w) {
            self.worst_margin = Some(margin);
        }
        self.check(ok, witness);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// True when the report counts against the exit status.
    pub fn exact_failure(&self) -> bool {
        !self.statistical && self.failures > 0
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn tracks_worst_margin_and_first_witness() {
        let mut r = VerificationReport::new("x", "p");
        r.check_le(&ratio(1, 2), &ratio(1, 1), || Value::from(1));
        r.check_le(&ratio(3, 2), &ratio(1, 1), || Value::from(2));
        r.check_le(&ratio(2, 1), &ratio(1, 1), || Value::from(3));
        assert_eq!(r.trials, 3);
        assert_eq!(r.failures, 2);
        assert_eq!(r.worst_margin, Some(ratio(-1, 1)));
        assert_eq!(r.witness, Some(Value::from(2)));
        assert!(r.exact_failure());
    }
}
