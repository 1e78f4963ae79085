use std::path::Path;

use textile_core::examples;
use textile_core::io::{parse_input, InputDocument, Object};
use textile_core::shift2d::{from_rank2, MatrixShift};
use textile_core::{Budget, TextileSystem};

use crate::Failure;

pub struct Loaded {
    pub doc: InputDocument,
    /// File stem, used as the default object name.
    pub stem: String,
    pub notes: Vec<String>,
}

/// Reads a file, `builtin:NAME`, or a missing path whose stem names a built-in example.
pub fn load(path: &str) -> Result<Loaded, Failure> {
    let p = Path::new(path);
    let stem = p
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    if let Some(name) = path.strip_prefix("builtin:") {
        return builtin(name, Vec::new());
    }
    match std::fs::read_to_string(p) {
        Ok(text) => Ok(Loaded {
            doc: parse_input(&text)?,
            stem,
            notes: Vec::new(),
        }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound && examples::source(&stem).is_some() => {
            builtin(&stem, vec![format!("{path} not found; using the built-in example {stem}")])
        }
        Err(e) => Err(Failure::Usage(format!("cannot read {path}: {e}"))),
    }
}

fn builtin(name: &str, notes: Vec<String>) -> Result<Loaded, Failure> {
    if examples::source(name).is_none() {
        let names: Vec<&str> = examples::names().collect();
        return Err(Failure::Usage(format!(
            "no built-in example `{name}` (available: {})",
            names.join(", ")
        )));
    }
    Ok(Loaded {
        doc: examples::document(name)?,
        stem: name.to_string(),
        notes,
    })
}

impl Loaded {
    /// The named object, or the one named after the file, or the only object accepted by `fits`.
    pub fn select(&self, object: Option<&str>, what: &str, fits: impl Fn(&Object) -> bool) -> Result<(String, &Object), Failure> {
        if let Some(name) = object {
            let o = self
                .doc
                .get(name)
                .ok_or_else(|| Failure::Usage(format!("no object named `{name}`")))?;
            if !fits(o) {
                return Err(Failure::Usage(format!("`{name}` is a {}, not a {what}", o.kind())));
            }
            return Ok((name.to_string(), o));
        }
        if let Some(o) = self.doc.get(&self.stem).filter(|o| fits(o)) {
            return Ok((self.stem.clone(), o));
        }
        let mut candidates = self.doc.entries().iter().filter(|(_, o)| fits(o));
        match (candidates.next(), candidates.next()) {
            (Some((n, o)), None) => Ok((n.clone(), o)),
            (None, _) => Err(Failure::Usage(format!("the document has no {what}"))),
            (Some(_), Some(_)) => Err(Failure::Usage(format!("several objects could be the {what}; pass --object"))),
        }
    }
}

pub fn is_shift_like(o: &Object) -> bool {
    matches!(
        o,
        Object::Shift(_) | Object::Automaton(_) | Object::Pattern(_) | Object::Textile { .. }
    )
}

pub fn is_textile_like(o: &Object) -> bool {
    matches!(o, Object::Textile { .. } | Object::RankTwo { .. })
}

/// The matrix shift presented by an object.
pub fn shift_of(o: &Object, budget: Budget, notes: &mut Vec<String>) -> Result<MatrixShift, Failure> {
    Ok(match o {
        Object::Shift(x) => x.clone(),
        Object::Automaton(ca) => {
            notes.push("cellular automaton recoded as a matrix shift on its two-row space-time blocks".into());
            ca.to_matrix_shift()?
        }
        Object::Pattern(p) => {
            let r = textile_core::shift2d::recode_to_matrix_shift(p, budget)?;
            notes.push(format!(
                "pattern shift recoded as a matrix shift on {} symbols over a {}-cell shape",
                r.symbols.len(),
                r.shape.len()
            ));
            r.shift
        }
        Object::Textile { value, .. } => {
            value.ensure_valid()?;
            notes.push("textile read as the matrix shift of its tiles".into());
            MatrixShift::from_textile(value)?
        }
        other => return Err(Failure::Usage(format!("a {} does not define a shift", other.kind()))),
    })
}

pub fn textile_of_object(o: &Object, notes: &mut Vec<String>) -> Result<TextileSystem, Failure> {
    Ok(match o {
        Object::Textile { value, .. } => value.clone(),
        Object::RankTwo { value, .. } => {
            notes.push("rank-two data read as its textile system".into());
            from_rank2(value)?
        }
        other => return Err(Failure::Usage(format!("a {} is not a textile", other.kind()))),
    })
}
