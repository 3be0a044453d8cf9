use hyperrefl::battery::Relation;
use hyperrefl::fpgroups::{AbelianInvariants, BindingCheck, EnumResult, Format, ParsedPresentation, Strategy};
use hyperrefl::reflections::{AnyCertificate, IsometryType};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report<T> {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub job: JobSpec,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, job: JobSpec, result: T) -> Self {
        Report { artifact: "hyperrefl", version: env!("CARGO_PKG_VERSION"), command, job, result }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Echo of the invocation.
#[derive(Debug, Default, Serialize)]
pub struct JobSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cosets: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data_dir: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_slow: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    #[serde(rename = "error")]
    pub message: String,
    #[serde(skip)]
    pub code: u8,
}

impl Failure {
    pub fn input(e: impl ToString) -> Self {
        Failure { message: e.to_string(), code: 2 }
    }
}

#[derive(Debug, Serialize)]
pub struct FileInfo {
    pub name: String,
    pub sha256: String,
    pub format: Format,
    pub generators: Vec<String>,
    pub relators: usize,
    pub relators_read: usize,
    pub duplicates_dropped: usize,
    pub truncated: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl From<&ParsedPresentation> for FileInfo {
    fn from(p: &ParsedPresentation) -> Self {
        FileInfo {
            name: p.presentation.name().to_string(),
            sha256: p.sha256.clone(),
            format: p.format,
            generators: p.presentation.generators().to_vec(),
            relators: p.presentation.relators().len(),
            relators_read: p.relators_read,
            duplicates_dropped: p.duplicates_dropped,
            truncated: p.truncated,
            warnings: p.warnings.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertifyResult {
    pub matrix: String,
    pub is_reflection: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isometry_type: Option<IsometryType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_modulo_scalars: Option<u32>,
    pub certificate: AnyCertificate,
}

#[derive(Debug, Serialize)]
pub struct OrderResult {
    pub file: FileInfo,
    pub order: Option<usize>,
    pub statement: Option<String>,
    pub enumeration: EnumResult,
}

#[derive(Debug, Serialize)]
pub struct IndexResult {
    pub file: FileInfo,
    pub added_relators: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bindings: Vec<BindingCheck>,
    pub relation: Relation,
    pub index: Option<usize>,
    pub statement: Option<String>,
    pub enumeration: EnumResult,
}

#[derive(Debug, Serialize)]
pub struct AbelianResult {
    pub file: FileInfo,
    pub invariants: AbelianInvariants,
    pub free_rank: usize,
    pub order: Option<String>,
}
