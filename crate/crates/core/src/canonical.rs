//! Canonical basis computation.
