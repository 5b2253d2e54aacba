//! Machine-readable output records.

use serde::Serialize;

use crate::exact::{Mode, Scalar};
use crate::oracle::Quantity;

/// One JSON-lines record: `{"p", "quantity", "mode", "x"?, "value"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueRecord {
    pub p: usize,
    pub quantity: Quantity,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub value: serde_json::Value,
}

impl ValueRecord {
    pub fn new<S: Scalar>(p: usize, quantity: Quantity, mode: &Mode, value: &S) -> Self {
        ValueRecord {
            p,
            quantity,
            mode: mode.label(),
            x: mode.x0().map(ToString::to_string),
            value: value.to_json(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}
