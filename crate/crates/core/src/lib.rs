pub mod bowtie;
pub mod constructions;
pub mod curves_mcg;
pub mod fal_diagram;
pub mod generate;
pub mod io;
pub mod surface_map;
