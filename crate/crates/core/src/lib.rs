//! Link graphs (subgraphs induced by spheres) and ball graphs of finite
//! regular graphs: exact degree statistics, vertex expansion, graph family
//! generators, and checkers for the known extremal bounds.
//!
//! ```
//! use linkscope_core::{generators::blown_up_cycle, link::{min_link_degree, Mode}};
//!
//! let g = blown_up_cycle(5, 2).unwrap();
//! let report = min_link_degree(&g, Mode::Sphere).unwrap();
//! assert_eq!(report.global_min, 2);
//! ```

pub mod edgelist;
pub mod error;
pub mod expansion;
pub mod generators;
pub mod graph;
pub mod link;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{Graph, LayerDecomposition};
