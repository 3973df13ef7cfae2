//! Shipped fixtures match their builders, load cleanly, and round-trip.
//! Set `VRBOUND_REGEN_FIXTURES=1` to rewrite them.

mod common;

use vrbound::surface::{load_surface, Surface};

#[test]
fn fixtures_are_current() {
    let regen = std::env::var_os("VRBOUND_REGEN_FIXTURES").is_some();
    for (name, surface) in common::fixtures() {
        let path = common::fixture_path(name);
        let text = surface.to_json_string();
        if regen {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} is stale");
        let loaded = load_surface(&path).unwrap();
        assert_eq!(loaded, surface, "{name}");
        assert_eq!(Surface::from_json_bytes(text.as_bytes()).unwrap().to_json_string(), text);
    }
}
