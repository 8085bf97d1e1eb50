#![allow(dead_code)]

use serde_json::Value;
use shiftriesz::compensated::DoubleDouble;
use std::sync::OnceLock;

pub fn fixture() -> &'static Value {
    static CELL: OnceLock<Value> = OnceLock::new();
    CELL.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/reference.json");
        let text = std::fs::read_to_string(path).expect("reference fixture");
        serde_json::from_str(&text).expect("valid fixture json")
    })
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

pub fn dd(v: &Value) -> DoubleDouble {
    DoubleDouble::from_parts(f(&v[0]), f(&v[1]))
}

pub fn floats(v: &Value) -> Vec<f64> {
    v.as_array().expect("array").iter().map(f).collect()
}

/// Entry of an array of objects whose `key` equals `value`.
pub fn find(section: &str, pred: impl Fn(&Value) -> bool) -> &'static Value {
    fixture()[section]
        .as_array()
        .expect("section array")
        .iter()
        .find(|v| pred(v))
        .unwrap_or_else(|| panic!("no matching entry in {section}"))
}
