//! Workbench text documents, certificate checking and SVG output.

mod document;
mod records;
mod svg;
mod verify;

pub use document::{Document, Record, RecordKind};
pub use records::*;
pub use svg::render_svg;
pub use verify::{verify_document, Verification};
