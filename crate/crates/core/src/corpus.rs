//! Placeholder; implemented in a later layer of the build.
