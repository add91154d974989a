//! Run configuration and the CSV, JSON and SVG emitters behind `cwhitham`.

pub mod config;
pub mod emit;
pub mod svg;

pub use config::{OutputFormat, RunConfig, CONFIG_ENV};
pub use svg::{Marker, PlotKind, PlotSpec};
