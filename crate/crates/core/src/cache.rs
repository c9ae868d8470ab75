//! On-disk block matrix cache.
