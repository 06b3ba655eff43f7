//! Published JSON schemas for every report, one per subcommand.

pub const COMMANDS: [&str; 8] = ["ball", "complex", "dehn", "filling", "coned", "comb", "bar", "compare"];

pub fn schema(command: &str) -> Option<&'static str> {
    Some(match command {
        "ball" => include_str!("../schemas/ball.schema.json"),
        "complex" => include_str!("../schemas/complex.schema.json"),
        "dehn" => include_str!("../schemas/dehn.schema.json"),
        "filling" => include_str!("../schemas/filling.schema.json"),
        "coned" => include_str!("../schemas/coned.schema.json"),
        "comb" => include_str!("../schemas/comb.schema.json"),
        "bar" => include_str!("../schemas/bar.schema.json"),
        "compare" => include_str!("../schemas/compare.schema.json"),
        _ => return None,
    })
}
