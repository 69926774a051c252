//! Command-line front end: scenario files, bundled reproductions and
//! report rendering on top of `sugeno-core`.

pub mod app;
pub mod bundled;
pub mod report;
pub mod run;
pub mod scenario;
