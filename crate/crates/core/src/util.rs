/// SplitMix64 finalizer over `seed ^ key`; used to derive per-vertex and
/// per-index generator seeds.
pub(crate) fn mix64(seed: u64, key: u64) -> u64 {
    let mut z = seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a word's letters into a 64-bit key.
pub(crate) fn word_key(w: &crate::word::Word) -> u64 {
    w.letters()
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64 ^ w.len() as u64, |h, l| mix64(h, l.raw() as u8 as u64))
}
