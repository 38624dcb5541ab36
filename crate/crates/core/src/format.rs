//! Canonical JSON documents for categories and presheaves.
//!
//! Serialization is deterministic: keys come out sorted, lists are sorted,
//! and identity composites and actions are left implicit, so parsing and
//! re-serializing a canonical document reproduces it byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{CategorySpec, FinCat, FinCatError};
use crate::presheaf::{Presheaf, PresheafData, PresheafError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
}

/// The base of a presheaf document: a path to a category document, or the
/// category itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(CategorySpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafFile {
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
    pub base: BaseRef,
    pub carriers: BTreeMap<String, Vec<String>>,
}

impl PresheafFile {
    pub fn new(x: &Presheaf, base: BaseRef) -> PresheafFile {
        let PresheafData { actions, carriers } = x.to_data();
        PresheafFile { actions, base, carriers }
    }

    pub fn data(&self) -> PresheafData {
        PresheafData {
            actions: self.actions.clone(),
            carriers: self.carriers.clone(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn category_to_json(c: &FinCat) -> String {
    to_canonical_json(&c.to_spec())
}

pub fn parse_category(text: &str) -> Result<FinCat, FormatError> {
    let spec: CategorySpec = serde_json::from_str(text)?;
    Ok(FinCat::from_spec(&spec)?)
}

pub fn parse_presheaf_file(text: &str) -> Result<PresheafFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Resolves an inline base; path bases must be loaded by the caller.
pub fn inline_base(file: &PresheafFile) -> Result<Option<FinCat>, FormatError> {
    match &file.base {
        BaseRef::Inline(spec) => Ok(Some(FinCat::from_spec(spec)?)),
        BaseRef::Path(_) => Ok(None),
    }
}

pub fn presheaf_from_file(file: &PresheafFile, base: Arc<FinCat>) -> Result<Presheaf, FormatError> {
    Ok(Presheaf::from_data(base, &file.data())?)
}

/// Canonical document for `x`, keeping the given base reference.
pub fn presheaf_to_json(x: &Presheaf, base: BaseRef) -> String {
    to_canonical_json(&PresheafFile::new(x, base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{parallel_pair, suspension};
    use crate::presheaf::yoneda;

    #[test]
    fn category_round_trip_is_byte_identical() {
        for c in [parallel_pair(), (*suspension(&parallel_pair()).category).clone()] {
            let text = category_to_json(&c);
            let back = parse_category(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(category_to_json(&back), text);
        }
    }

    #[test]
    fn presheaf_round_trip_with_both_base_forms() {
        let base = Arc::new(parallel_pair());
        let x = yoneda(&base, base.object("E").unwrap());
        for b in [BaseRef::Path("dirtree-cat.json".into()), BaseRef::Inline(base.to_spec())] {
            let text = presheaf_to_json(&x, b.clone());
            let file = parse_presheaf_file(&text).unwrap();
            assert_eq!(file.base, b);
            let y = presheaf_from_file(&file, base.clone()).unwrap();
            assert_eq!(y, x);
            assert_eq!(presheaf_to_json(&y, file.base.clone()), text);
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse_category(r#"{"objects": [], "morphisms": [], "identities": {}, "extra": 1}"#).is_err());
    }
}
