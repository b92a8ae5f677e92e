//! Process-wide guard on the number of enumerated faces and cells.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, Result};

pub const DEFAULT_MAX_FACES: usize = 1_000_000;

static MAX_FACES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_FACES);

pub fn set_max_faces(limit: usize) {
    MAX_FACES.store(limit, Ordering::Relaxed);
}

pub fn max_faces() -> usize {
    MAX_FACES.load(Ordering::Relaxed)
}

pub fn check_face_count(count: usize) -> Result<()> {
    let limit = max_faces();
    if count > limit {
        Err(Error::TooManyFaces { limit })
    } else {
        Ok(())
    }
}
