pub mod crs;
pub mod free;
pub mod rankdist;
pub mod torus;
