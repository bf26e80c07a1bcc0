//! Generator relabelling between ranks and the Hölder comparison of the
//! shift-path embedding.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{agreement_radius, Agreement, Pattern};
use crate::trees::{SequenceSource, ShiftPath};

/// Relabels a pattern through an injection `{1..rank} → {1..n}`.
pub fn relabel_embed(p: &Pattern, iota: &[u8], n: u8) -> Result<Pattern> {
    p.relabel(iota, n)
}

/// Sequence agreement up to `cap`: the largest `k` with `σ1(i) = σ2(i)` for
/// all `|i| < k`.
pub fn sequence_agreement(s1: &dyn SequenceSource, s2: &dyn SequenceSource, cap: usize) -> Agreement {
    for k in 0..cap {
        let i = k as i64;
        if s1.letter(i) != s2.letter(i) || s1.letter(-i) != s2.letter(-i) {
            return Agreement::Exact(k);
        }
    }
    Agreement::AtLeast(cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HoelderReport {
    #[serde(serialize_with = "agreement_str")]
    pub k: Agreement,
    #[serde(serialize_with = "agreement_str")]
    pub r: Agreement,
    /// `|r - k| <= 1`, with two capped values counting as equal.
    pub ok: bool,
}

fn agreement_str<S: serde::Serializer>(a: &Agreement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&a.to_string())
}

/// Compares the sequence agreement of `σ1, σ2` with the tree agreement of
/// their shift-path trees under `alpha`.
///
/// A radius-`m` ball sees the letters on `[-m, m-1]`, so `r` is `k - 1` or `k`.
pub fn hoelder_check(
    s1: Arc<dyn SequenceSource>,
    s2: Arc<dyn SequenceSource>,
    alpha: &[u8],
    n: u8,
    cap: usize,
) -> Result<HoelderReport> {
    if s1.alphabet() != s2.alphabet() {
        return Err(Error::InvalidArgument(format!(
            "sequences use different alphabets {:?} and {:?}",
            s1.alphabet(),
            s2.alphabet()
        )));
    }
    let k = sequence_agreement(&*s1, &*s2, cap);
    let t1 = ShiftPath::new(s1, alpha.to_vec(), n)?;
    let t2 = ShiftPath::new(s2, alpha.to_vec(), n)?;
    let r = agreement_radius(&t1, &t2, cap);
    let ok = match (k, r) {
        (Agreement::AtLeast(_), Agreement::AtLeast(_)) => true,
        _ => k.radius().abs_diff(r.radius()) <= 1,
    };
    Ok(HoelderReport { k, r, ok })
}
