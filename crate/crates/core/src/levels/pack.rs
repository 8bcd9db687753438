use std::sync::OnceLock;

use crate::model::Level;

const DOCUMENTS: [&str; 8] = [
    include_str!("../../../../levels/pack/l01.level.json"),
    include_str!("../../../../levels/pack/l02.level.json"),
    include_str!("../../../../levels/pack/l03.level.json"),
    include_str!("../../../../levels/pack/l04.level.json"),
    include_str!("../../../../levels/pack/l05.level.json"),
    include_str!("../../../../levels/pack/l06.level.json"),
    include_str!("../../../../levels/pack/l07.level.json"),
    include_str!("../../../../levels/pack/l08.level.json"),
];

/// The built-in levels, easiest first.
pub fn bundled_pack() -> &'static [Level] {
    static PACK: OnceLock<Vec<Level>> = OnceLock::new();
    PACK.get_or_init(|| {
        DOCUMENTS
            .iter()
            .map(|doc| super::level_from_json(doc).expect("bundled levels are valid"))
            .collect()
    })
}
