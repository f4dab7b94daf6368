//! Flat bitsets over `u64` words. Bit `i` lives at `words[i / 64] >> (i % 64)`.

pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

/// The 64 bits starting at `bit`; positions past the end read as zero.
#[inline]
fn load(src: &[u64], bit: usize) -> u64 {
    let (w, o) = (bit / 64, bit % 64);
    let low = src.get(w).copied().unwrap_or(0) >> o;
    if o == 0 {
        low
    } else {
        low | src.get(w + 1).copied().unwrap_or(0) << (64 - o)
    }
}

/// `dst[dst_bit + i] |= src[src_bit + i]` for `i < len`.
pub(crate) fn or_shifted(dst: &mut [u64], dst_bit: usize, src: &[u64], src_bit: usize, len: usize) {
    let mut i = 0;
    while i < len {
        let d = dst_bit + i;
        let off = d % 64;
        let take = (64 - off).min(len - i);
        let mask = if take == 64 { !0 } else { (1u64 << take) - 1 };
        dst[d / 64] |= (load(src, src_bit + i) & mask) << off;
        i += take;
    }
}

pub(crate) fn count_ones(words: &[u64]) -> u64 {
    words.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// Iterator over the indices of set bits.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + b)
        })
    })
}
