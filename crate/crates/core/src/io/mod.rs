//! File formats: configuration JSON, SVG drawings and classification tables.

pub mod config;
pub mod svg;
pub mod tables;

pub use config::{read_config, read_config_str, to_json_exact, write_config, write_config_string, ConfigFileV1};
pub use svg::{render_svg, SvgOptions};
pub use tables::{compute_tables, tables_csv, TableRow};
