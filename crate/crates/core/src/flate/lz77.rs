//! Hash-chain LZ77 match finder.

use super::tables::{MAX_MATCH, MIN_MATCH, WINDOW_SIZE};
use super::CompressionLevel;

const HASH_BITS: u32 = 15;
const HASH_SIZE: usize = 1 << HASH_BITS;
const WINDOW_MASK: usize = WINDOW_SIZE - 1;
const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Literal(u8),
    /// Copy `length` bytes starting `distance` bytes back.
    Match { length: u16, distance: u16 },
}

impl Token {
    /// Number of input bytes this token stands for.
    pub fn span(&self) -> usize {
        match *self {
            Token::Literal(_) => 1,
            Token::Match { length, .. } => length as usize,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    tokens: Vec<Token>,
}

impl TokenStream {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Total number of bytes the stream expands to.
    pub fn input_len(&self) -> usize {
        self.tokens.iter().map(Token::span).sum()
    }

    /// Expands the stream, or `None` if a match reaches before the start of
    /// the output or violates the length or distance bounds.
    pub fn expand(&self) -> Option<Vec<u8>> {
        let mut out = Vec::with_capacity(self.input_len());
        for &t in &self.tokens {
            match t {
                Token::Literal(b) => out.push(b),
                Token::Match { length, distance } => {
                    let (length, distance) = (length as usize, distance as usize);
                    if !(MIN_MATCH..=MAX_MATCH).contains(&length)
                        || distance == 0
                        || distance > WINDOW_SIZE
                        || distance > out.len()
                    {
                        return None;
                    }
                    let start = out.len() - distance;
                    for i in 0..length {
                        out.push(out[start + i]);
                    }
                }
            }
        }
        Some(out)
    }
}

impl From<Vec<Token>> for TokenStream {
    fn from(tokens: Vec<Token>) -> Self {
        Self { tokens }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct MatchParams {
    pub max_chain: usize,
    pub lazy: bool,
    /// Stop walking the chain once a match this long is found.
    pub nice_length: usize,
}

impl MatchParams {
    pub fn for_level(level: CompressionLevel) -> Option<Self> {
        match level {
            CompressionLevel::Stored => None,
            CompressionLevel::FixedGreedy | CompressionLevel::DynamicGreedy => Some(Self {
                max_chain: 128,
                lazy: false,
                nice_length: MAX_MATCH,
            }),
            CompressionLevel::DynamicLazy => Some(Self {
                max_chain: 1024,
                lazy: true,
                nice_length: MAX_MATCH,
            }),
        }
    }
}

struct MatchFinder<'a> {
    data: &'a [u8],
    head: Vec<u32>,
    prev: Vec<u32>,
    params: MatchParams,
}

impl<'a> MatchFinder<'a> {
    fn new(data: &'a [u8], params: MatchParams) -> Self {
        Self {
            data,
            head: vec![NIL; HASH_SIZE],
            prev: vec![NIL; WINDOW_SIZE],
            params,
        }
    }

    fn hash(&self, pos: usize) -> usize {
        let d = self.data;
        let v = u32::from(d[pos]) << 16 | u32::from(d[pos + 1]) << 8 | u32::from(d[pos + 2]);
        (v.wrapping_mul(0x9E37_79B1) >> (32 - HASH_BITS)) as usize
    }

    /// Adds `pos` to its hash chain. Positions without three bytes left are skipped.
    fn insert(&mut self, pos: usize) {
        if pos + MIN_MATCH > self.data.len() {
            return;
        }
        let h = self.hash(pos);
        self.prev[pos & WINDOW_MASK] = self.head[h];
        self.head[h] = pos as u32;
    }

    /// Longest earlier match for `pos`, as `(length, distance)`. Length is 0
    /// when nothing of at least `MIN_MATCH` bytes exists.
    fn longest_match(&self, pos: usize) -> (usize, usize) {
        let data = self.data;
        let max_len = MAX_MATCH.min(data.len() - pos);
        if max_len < MIN_MATCH {
            return (0, 0);
        }
        let mut best_len = MIN_MATCH - 1;
        let mut best_dist = 0;
        let mut cand = self.head[self.hash(pos)];
        let mut chain = self.params.max_chain;
        let target = &data[pos..pos + max_len];
        while cand != NIL && chain > 0 {
            let c = cand as usize;
            let dist = pos - c;
            if dist > WINDOW_SIZE {
                break;
            }
            if data[c + best_len] == target[best_len] {
                let len = target
                    .iter()
                    .zip(&data[c..c + max_len])
                    .take_while(|(a, b)| a == b)
                    .count();
                if len > best_len {
                    best_len = len;
                    best_dist = dist;
                    if len >= self.params.nice_length.min(max_len) {
                        break;
                    }
                }
            }
            let next = self.prev[c & WINDOW_MASK];
            // Older entries always have smaller positions; anything else is a stale slot.
            if next != NIL && next as usize >= c {
                break;
            }
            cand = next;
            chain -= 1;
        }
        if best_len >= MIN_MATCH {
            (best_len, best_dist)
        } else {
            (0, 0)
        }
    }
}

fn match_token(len: usize, dist: usize) -> Token {
    Token::Match {
        length: len as u16,
        distance: dist as u16,
    }
}

pub(crate) fn tokenize_with(data: &[u8], params: MatchParams) -> Vec<Token> {
    let mut finder = MatchFinder::new(data, params);
    let mut tokens = Vec::with_capacity(data.len() / 2 + 16);
    let n = data.len();
    let mut pos = 0;

    if !params.lazy {
        while pos < n {
            let (len, dist) = finder.longest_match(pos);
            finder.insert(pos);
            if len >= MIN_MATCH {
                tokens.push(match_token(len, dist));
                for p in pos + 1..pos + len {
                    finder.insert(p);
                }
                pos += len;
            } else {
                tokens.push(Token::Literal(data[pos]));
                pos += 1;
            }
        }
        return tokens;
    }

    // Lazy evaluation: a match found at pos - 1 is held back while pos is
    // searched; if pos yields a strictly longer match the held byte becomes a literal.
    let mut pending: Option<(usize, usize)> = None;
    while pos < n {
        let (len, dist) = finder.longest_match(pos);
        finder.insert(pos);
        match pending {
            Some((plen, pdist)) => {
                if len > plen {
                    tokens.push(Token::Literal(data[pos - 1]));
                    pending = Some((len, dist));
                    pos += 1;
                } else {
                    tokens.push(match_token(plen, pdist));
                    let end = pos - 1 + plen;
                    for p in pos + 1..end {
                        finder.insert(p);
                    }
                    pos = end;
                    pending = None;
                }
            }
            None => {
                if len >= MIN_MATCH {
                    if len >= params.nice_length {
                        tokens.push(match_token(len, dist));
                        for p in pos + 1..pos + len {
                            finder.insert(p);
                        }
                        pos += len;
                    } else {
                        pending = Some((len, dist));
                        pos += 1;
                    }
                } else {
                    tokens.push(Token::Literal(data[pos]));
                    pos += 1;
                }
            }
        }
    }
    if let Some((plen, pdist)) = pending {
        tokens.push(match_token(plen, pdist));
    }
    tokens
}

/// Splits `data` into literals and back-references for the given level.
/// The stored level performs no matching and yields only literals.
pub fn lz77_tokenize(data: &[u8], level: CompressionLevel) -> TokenStream {
    match MatchParams::for_level(level) {
        Some(params) => tokenize_with(data, params).into(),
        None => data.iter().map(|&b| Token::Literal(b)).collect::<Vec<_>>().into(),
    }
}
