//! File formats and rendering: dataset and task-sheet CSV, JSON parameter
//! documents, SVG figures and text reports.

pub mod csv;
pub mod params;
pub mod report;
pub mod svg;

pub use self::csv::{read_dataset, read_task_sheets, write_dataset, write_task_sheets};
pub use self::params::{Metadata, ParameterDocument};
