//! Construction documents shipped with the crate.

pub const TRIANGLE_GENERIC: &str = include_str!("../fixtures/triangle_generic.json");
pub const TRIANGLE_RIGHT: &str = include_str!("../fixtures/triangle_right.json");
pub const SLIDING_SEGMENT: &str = include_str!("../fixtures/sliding_segment.json");
pub const CIRCLE_IDENTITY: &str = include_str!("../fixtures/circle_identity.json");
pub const MIDPOINT_CIRCLE: &str = include_str!("../fixtures/midpoint_circle.json");

/// `(name, document)` pairs.
pub const ALL: &[(&str, &str)] = &[
    ("triangle_generic", TRIANGLE_GENERIC),
    ("triangle_right", TRIANGLE_RIGHT),
    ("sliding_segment", SLIDING_SEGMENT),
    ("circle_identity", CIRCLE_IDENTITY),
    ("midpoint_circle", MIDPOINT_CIRCLE),
];
