use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use textile_core::{FPAbelianGroup, IntMatrix};

/// Output of one invocation. The JSON form round-trips through [`Report::from_json`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// The command line after the program name.
    pub command: Vec<String>,
    pub result: Value,
    pub notes: Vec<String>,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    json!(m.row_vecs())
}

pub fn bigint_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

pub fn biguint_json(x: &BigUint) -> Value {
    x.to_u64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

pub fn group_json(g: &FPAbelianGroup) -> Value {
    json!({
        "group": {
            "free_rank": g.free_rank,
            "torsion": g.torsion.iter().map(bigint_json).collect::<Vec<_>>(),
        },
        "text": g.to_string(),
    })
}

/// Rows of a matrix, one line each, indented.
pub fn matrix_text(m: &IntMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            format!("  {}\n", row.join(" "))
        })
        .collect()
}
