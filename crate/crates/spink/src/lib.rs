//! Lossless packing of special-color print layers into an RGB image.
//!
//! Printing with special inks (silver, white, fluorescent) needs auxiliary raster
//! layers on top of the ordinary RGB artwork. This crate reversibly embeds a
//! bilevel layer and a 3-bit layer into the artwork itself using histogram-shifting
//! reversible data hiding, so a single marked image serves both normal printing and
//! special-ink printing. Extraction restores all three originals bit-exactly.
//!
//! The main entry points are [`pipeline::embed`] and [`pipeline::extract`];
//! everything else is the machinery underneath:
//!
//! * [`imageio`] — PNG/PNM readers and writers for the raster types
//! * [`rdh`] — the single-channel histogram-shifting engine
//! * [`layer_prep`] — bit-plane decomposition of the 3-bit layer
//! * [`bincodec`] — lossless bilevel compression (context-modeled arithmetic coding)
//! * [`container`] — payload serialization and per-round chained side information
//! * [`metrics`] — PSNR / MSSIM quality metrics
//! * [`fixtures`] — synthetic illustration-like test images

pub mod bincodec;
pub mod bits;
pub mod container;
pub mod fixtures;
pub mod imageio;
pub mod layer_prep;
pub mod metrics;
pub mod pipeline;
pub mod rdh;

pub use imageio::{AnyImage, BiLevelImage, GrayImage, ImageFormat, RgbImage};
pub use layer_prep::TriLevelLayer;
