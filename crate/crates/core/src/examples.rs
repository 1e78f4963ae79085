//! Built-in example documents.

use crate::error::{Error, Result};
use crate::io::{parse_input, InputDocument, Object};
use crate::shift2d::MatrixShift;
use crate::textile::TextileSystem;

const SOURCES: [(&str, &str); 8] = [
    ("ex1", include_str!("../data/ex1.txt")),
    ("ex2", include_str!("../data/ex2.txt")),
    ("ex3", include_str!("../data/ex3.txt")),
    ("nonlifting", include_str!("../data/nonlifting.txt")),
    ("full-shift-2", include_str!("../data/full-shift-2.txt")),
    ("golden-mean", include_str!("../data/golden-mean.txt")),
    ("ledrappier", include_str!("../data/ledrappier.txt")),
    ("swap-ca", include_str!("../data/swap-ca.txt")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn document(name: &str) -> Result<InputDocument> {
    let text = source(name).ok_or_else(|| Error::Reference {
        line: 0,
        message: format!("no built-in example `{name}`"),
    })?;
    parse_input(text)
}

fn all_objects() -> Vec<(String, Object)> {
    names()
        .flat_map(|n| document(n).expect("built-in examples parse").entries().to_vec())
        .collect()
}

/// Every textile in the built-in documents, by object name.
pub fn textiles() -> Vec<(String, TextileSystem)> {
    all_objects()
        .into_iter()
        .filter_map(|(n, o)| match o {
            Object::Textile { value, .. } => Some((n, value)),
            _ => None,
        })
        .collect()
}

/// Every matrix shift in the built-in documents, including those of the
/// cellular automata and the recoded pattern shifts.
pub fn shifts() -> Vec<(String, MatrixShift)> {
    all_objects()
        .into_iter()
        .filter_map(|(n, o)| match o {
            Object::Shift(x) => Some((n, x)),
            Object::Automaton(ca) => Some((n, ca.to_matrix_shift().expect("built-in automata recode"))),
            _ => None,
        })
        .collect()
}

/// The built-in textile with this object name.
///
/// # Panics
/// If there is none.
pub fn textile(name: &str) -> TextileSystem {
    textiles()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no built-in textile `{name}`"))
        .1
}

/// The built-in matrix shift with this object name.
///
/// # Panics
/// If there is none.
pub fn shift(name: &str) -> MatrixShift {
    shifts()
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no built-in shift `{name}`"))
        .1
}
