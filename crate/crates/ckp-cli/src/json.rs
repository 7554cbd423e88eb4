//! Instance file format.
//!
//! ```json
//! {"name": "...", "n": 3, "rho": 0.9, "kappa": 1.28, "b": 6.0,
//!  "items": [{"c": 1.0, "a": 2.0, "sigma2": 3.0}, ...]}
//! ```
//!
//! Floats are written in scientific notation with 17 significant digits so
//! the file round-trips bit-exactly.

use std::io::Write;
use std::path::Path;

use ckp_core::Instance;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct WireItem {
    c: f64,
    a: f64,
    sigma2: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct WireInstance {
    name: String,
    n: usize,
    rho: Option<f64>,
    kappa: f64,
    b: f64,
    items: Vec<WireItem>,
}

#[derive(Debug)]
pub enum JsonError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    /// `n` does not match the item list
    Inconsistent,
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonError::Io(e) => write!(f, "io error: {e}"),
            JsonError::Parse(e) => write!(f, "parse error: {e}"),
            JsonError::Inconsistent => write!(f, "item count does not match n"),
        }
    }
}

impl std::error::Error for JsonError {}

impl From<std::io::Error> for JsonError {
    fn from(e: std::io::Error) -> Self {
        JsonError::Io(e)
    }
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Parse(e)
    }
}

/// Formatter that writes every float with 17 significant digits.
struct PreciseFormatter;

impl serde_json::ser::Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_string(inst: &Instance) -> String {
    let wire = WireInstance {
        name: inst.name.clone(),
        n: inst.n(),
        rho: inst.rho,
        kappa: inst.kappa,
        b: inst.capacity,
        items: (0..inst.n())
            .map(|j| WireItem { c: inst.profit[j], a: inst.mean[j], sigma2: inst.var[j] })
            .collect(),
    };
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter);
    wire.serialize(&mut ser).expect("serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits utf-8")
}

pub fn write_file(inst: &Instance, path: &Path) -> Result<(), JsonError> {
    std::fs::write(path, to_string(inst))?;
    Ok(())
}

pub fn from_str(text: &str) -> Result<Instance, JsonError> {
    let wire: WireInstance = serde_json::from_str(text)?;
    if wire.items.len() != wire.n {
        return Err(JsonError::Inconsistent);
    }
    Ok(Instance {
        name: wire.name,
        profit: wire.items.iter().map(|i| i.c).collect(),
        mean: wire.items.iter().map(|i| i.a).collect(),
        var: wire.items.iter().map(|i| i.sigma2).collect(),
        capacity: wire.b,
        kappa: wire.kappa,
        rho: wire.rho,
    })
}

pub fn read_file(path: &Path) -> Result<Instance, JsonError> {
    from_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ckp_core::gen::{generate, Family, GenSpec};

    #[test]
    fn roundtrip_is_exact() {
        let inst = generate(&GenSpec {
            family: Family::Sc,
            n: 30,
            rho: 0.9,
            seed: 5,
            capacity_factor: 1.0,
        })
        .unwrap();
        let text = to_string(&inst);
        let back = from_str(&text).unwrap();
        assert_eq!(inst, back);
        // irrational kappa survives with full precision
        assert_eq!(inst.kappa.to_bits(), back.kappa.to_bits());
    }

    #[test]
    fn rejects_inconsistent_n() {
        let text = r#"{"name":"x","n":2,"rho":null,"kappa":1.0,"b":5.0,
                       "items":[{"c":1.0,"a":1.0,"sigma2":0.0}]}"#;
        assert!(matches!(from_str(text), Err(JsonError::Inconsistent)));
    }
}
