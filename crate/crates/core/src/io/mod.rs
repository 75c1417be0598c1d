//! JSON instance and solution files, seeded generators and SVG rendering.

mod format;
mod generate;
mod svg;

pub use format::{
    content_hash, GknapSolution, InstanceFile, IoError, Metadata, PlacementRecord, Provenance, ReductionFile,
    SolutionBody, SolutionFile,
};
pub use generate::{
    gen_guillotine, gen_misr_planted, gen_misr_with_opt, gen_mss, strip_trap, GuillotineParams, MisrGenParams,
    MssInstance, PackedInstance,
};
pub use svg::{render_misr, render_packing};
