//! Certificates: checked claims with exact witnesses, serialized canonically.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::matrix::MatrixF;
use crate::poly::HomPoly;
use crate::scalar::{Field, Scalar};
use crate::subspace::{ProjSubspace, SubspaceRecord};

pub const SCHEMA: &str = "schurlab.certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Probed,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    /// Informational claims never affect the exit status.
    pub required: bool,
    pub detail: String,
    pub witness: Value,
}

impl Claim {
    pub fn new(id: &str, status: Status, detail: impl Into<String>, witness: Value) -> Self {
        Claim { id: id.into(), status, required: true, detail: detail.into(), witness }
    }

    pub fn check(id: &str, ok: bool, detail: impl Into<String>, witness: Value) -> Self {
        Self::new(id, if ok { Status::Pass } else { Status::Fail }, detail, witness)
    }

    pub fn info(mut self) -> Self {
        self.required = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub command: String,
    pub instance: String,
    /// SHA-256 of the canonical input document.
    pub digest: String,
    pub field: Field,
    pub seed: u64,
    pub claims: Vec<Claim>,
    pub artifacts: Value,
    pub error: Option<ErrorRecord>,
}

pub fn digest(input: &Value) -> String {
    let bytes = serde_json::to_vec(input).expect("JSON values serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Certificate {
    pub fn new(command: &str, instance: &str, input: &Value, field: Field, seed: u64) -> Self {
        Certificate {
            schema: SCHEMA.into(),
            command: command.into(),
            instance: instance.into(),
            digest: digest(input),
            field,
            seed,
            claims: Vec::new(),
            artifacts: json!({}),
            error: None,
        }
    }

    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    pub fn artifact(&mut self, key: &str, v: Value) {
        self.artifacts.as_object_mut().expect("artifacts is an object").insert(key.into(), v);
    }

    pub fn fail_with(&mut self, e: &Error) {
        let kind = match e {
            Error::Claim(_) => "claim",
            Error::Unresolved(_) => "unresolved",
            Error::Parse(_) | Error::Json(_) => "parse",
            Error::Io(_) => "io",
            _ => "precondition",
        };
        self.error = Some(ErrorRecord { kind: kind.into(), message: e.to_string() });
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// 0 all pass, 2 precondition error, 3 failed claim, 4 only unresolved.
    pub fn exit_code(&self) -> i32 {
        if let Some(e) = &self.error {
            return match e.kind.as_str() {
                "claim" => 3,
                "unresolved" => 4,
                _ => 2,
            };
        }
        let req = self.claims.iter().filter(|c| c.required);
        let statuses: Vec<Status> = req.map(|c| c.status).collect();
        if statuses.contains(&Status::Fail) {
            3
        } else if statuses.contains(&Status::Unresolved) {
            4
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} over {} (seed {})\ndigest {}\n", self.command, self.instance, self.field, self.seed, self.digest);
        if let Some(e) = &self.error {
            out += &format!("ERROR [{}] {}\n", e.kind, e.message);
        }
        for c in &self.claims {
            let st = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Probed => "PROBED",
                Status::Unresolved => "UNRESOLVED",
            };
            let tag = if c.required { "" } else { " (info)" };
            out += &format!("{st:<10} {}{tag}: {}\n", c.id, c.detail);
        }
        out += &format!("exit {}\n", self.exit_code());
        out
    }
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &MatrixF) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(m.row(i))).collect())
}

pub fn poly_json(p: &HomPoly) -> Value {
    json!({ "nvars": p.nvars(), "degree": p.degree(), "terms": p.to_record() })
}

pub fn subspace_json(s: &ProjSubspace) -> Value {
    serde_json::to_value(SubspaceRecord::from(s)).expect("records serialize")
}
