//! Bit-exact file formats: binary/ASCII PGM for images and QMAP for
//! per-pixel prediction and score maps.

mod pgm;
mod qmap;

pub use pgm::{read_pgm, write_pgm};
pub use qmap::{
    read_map, write_map, MapData, MapFile, MapKind, QMAP_HEADER_LEN, QMAP_MAGIC, QMAP_VERSION,
};
