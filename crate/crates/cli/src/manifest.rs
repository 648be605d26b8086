//! Run manifests and the JSON Lines output they are embedded in.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliResult;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What produced an output: command, inputs, parameters and seed. Holds no
/// timestamps, so its digest is stable across reruns.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_digests: BTreeMap<String, String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub output_paths: Vec<String>,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: &impl Serialize, seed: Option<u64>, output: Option<&Path>) -> Self {
        RunManifest {
            command: command.to_string(),
            input_digests: BTreeMap::new(),
            parameters: serde_json::to_value(parameters).expect("arguments serialize"),
            seed,
            output_paths: output.map(|p| p.display().to_string()).into_iter().collect(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_input(mut self, name: &str, bytes: &[u8]) -> Self {
        self.input_digests.insert(name.to_string(), sha256_hex(bytes));
        self
    }

    pub fn with_output(mut self, path: &str) -> Self {
        self.output_paths.push(path.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifests serialize")
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }
}

pub fn open_output(output: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

/// JSON Lines: a manifest line, then one record per line, each carrying
/// the manifest digest.
pub struct JsonSink {
    out: Box<dyn Write>,
    digest: String,
}

impl JsonSink {
    pub fn open(manifest: &RunManifest, output: Option<&Path>) -> CliResult<Self> {
        let mut out = open_output(output)?;
        let digest = manifest.digest();
        let head = json!({"manifest": manifest, "manifest_digest": digest});
        writeln!(out, "{head}")?;
        Ok(JsonSink { out, digest })
    }

    pub fn record(&mut self, value: &impl Serialize) -> CliResult<()> {
        let mut value = serde_json::to_value(value).expect("records serialize");
        if let Value::Object(map) = &mut value {
            map.insert("manifest_digest".into(), Value::String(self.digest.clone()));
        }
        writeln!(self.out, "{value}")?;
        Ok(())
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.out.flush()?;
        Ok(())
    }
}
