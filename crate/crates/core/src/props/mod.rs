//! Property tests over the public API.

mod cohomology;
mod extension;
mod metric;
mod quandle;
mod ring;
mod torus;
