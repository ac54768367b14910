//! Inline triple specs: `key = value` lines describing a block triple.
//!
//! ```text
//! # T5 over C with slope (2, -1)
//! id = my-t5
//! expected = positive
//! field = C
//! n = 3
//! k = 1 2
//! h = 1t:2 1t:-1 1
//! base = 7
//! fiber = 14
//! ```
//!
//! A block token is a size followed by an optional tag: `z` for a zero
//! block, `c` for the complex part, or any other letter to tie blocks
//! together. A tied size-1 block over `C` may carry an integer weight `:w`.

use super::{BlockSpec, CatalogEntry, CatalogError, Expected, Recipe};
use crate::algebra::blocks::{Block, BlockKind};
use crate::algebra::classical::Field;
use crate::triple::Tags;

fn err(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::SpecParse { line, message: message.into() }
}

pub fn parse_block(token: &str) -> Option<Block> {
    let (head, weight) = match token.split_once(':') {
        Some((h, w)) => (h, Some(w.parse::<i64>().ok()?)),
        None => (token, None),
    };
    let digits = head.chars().take_while(|c| c.is_ascii_digit()).count();
    let size: usize = head[..digits].parse().ok()?;
    if size == 0 {
        return None;
    }
    let tag = &head[digits..];
    let mut block = match tag {
        "" => Block::full(size),
        "z" => Block::zero(size),
        "c" => Block::complex(size),
        t if t.len() == 1 && t.chars().all(|c| c.is_ascii_alphabetic()) => Block::tied(size, t.chars().next()?),
        _ => return None,
    };
    if let Some(w) = weight {
        if block.tie.is_none() || block.kind != BlockKind::Full {
            return None;
        }
        block.weight = w;
    }
    Some(block)
}

fn parse_blocks(line: usize, value: &str) -> Result<Vec<Block>, CatalogError> {
    value.split_whitespace().map(|t| parse_block(t).ok_or_else(|| err(line, format!("bad block token `{t}`")))).collect()
}

pub fn parse_spec(text: &str) -> Result<CatalogEntry, CatalogError> {
    let mut id = None;
    let mut description = None;
    let mut expected = None;
    let mut field = None;
    let mut n = None;
    let mut k = None;
    let mut h = None;
    let mut traceless = false;
    let mut tags = Tags::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| err(line, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let int = |v: &str| v.parse::<usize>().map_err(|_| err(line, format!("`{key}` needs a nonnegative integer")));
        match key {
            "id" => id = Some(value.to_string()),
            "description" => description = Some(value.to_string()),
            "expected" => {
                expected = Some(match value {
                    "positive" => Expected::Positive,
                    "not_positive" => Expected::NotPositive,
                    _ => return Err(err(line, "expected is `positive` or `not_positive`")),
                })
            }
            "field" => field = Some(Field::parse(value).ok_or_else(|| err(line, "field is R, C or H"))?),
            "n" => n = Some(int(value)?),
            "k" => k = Some(parse_blocks(line, value)?),
            "h" => h = Some(parse_blocks(line, value)?),
            "traceless" => {
                traceless = match value {
                    "true" | "yes" => true,
                    "false" | "no" => false,
                    _ => return Err(err(line, "traceless is true or false")),
                }
            }
            "base" => tags.base = Some(u8::try_from(int(value)?).map_err(|_| err(line, "tag out of range"))?),
            "fiber" => tags.fiber = Some(u8::try_from(int(value)?).map_err(|_| err(line, "tag out of range"))?),
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let last = text.lines().count();
    let missing = |what: &str| err(last, format!("missing `{what}`"));
    let id = id.ok_or_else(|| missing("id"))?;
    let field = field.ok_or_else(|| missing("field"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let h = h.ok_or_else(|| missing("h"))?;
    let spec = BlockSpec { field, n, k, h, traceless, tags };
    Ok(CatalogEntry {
        description: description.unwrap_or_else(|| Recipe::Blocks(spec.clone()).to_string()),
        id,
        expected,
        recipe: Recipe::Blocks(spec),
        n: None,
    })
}
