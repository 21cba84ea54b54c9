//! Parsing of parameter-box expressions and key-value config files.
//!
//! A box looks like `s=0..0,t=0..10,a=1..12,b=1..30`; each entry is an
//! inclusive range, with a bare integer standing for a single-point range.

use anyhow::{anyhow, bail, Context, Result};
use std::collections::HashMap;
use std::ops::RangeInclusive;

#[derive(Clone, Debug, Default)]
pub struct BoxSpec {
    pub s: Option<RangeInclusive<i64>>,
    pub t: Option<RangeInclusive<i64>>,
    pub a: Option<RangeInclusive<i64>>,
    pub b: Option<RangeInclusive<i64>>,
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: i64 = lo.trim().parse().with_context(|| format!("bad range start {lo:?}"))?;
        let hi: i64 = hi.trim().parse().with_context(|| format!("bad range end {hi:?}"))?;
        Ok(lo..=hi)
    } else {
        let v: i64 = text.parse().with_context(|| format!("bad range {text:?}"))?;
        Ok(v..=v)
    }
}

pub fn parse_box(text: &str) -> Result<BoxSpec> {
    let mut out = BoxSpec::default();
    for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| anyhow!("box entry {entry:?} is not key=range"))?;
        let range = parse_range(value)?;
        match key.trim() {
            "s" => out.s = Some(range),
            "t" => out.t = Some(range),
            "a" => out.a = Some(range),
            "b" => out.b = Some(range),
            other => bail!("unknown box key {other:?} (expected s, t, a, b)"),
        }
    }
    Ok(out)
}

/// `key = value` lines; `#` starts a comment. Returns the raw map.
pub fn parse_kv_file(text: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// Search settings from a config file: ranges under keys s/t/a/b, numbers
/// under order/alpha/beta/seed/compare.
pub struct FileConfig {
    pub order: Option<usize>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub seed: Option<usize>,
    pub compare: Option<usize>,
    pub bounds: BoxSpec,
}

pub fn parse_search_config(text: &str) -> Result<FileConfig> {
    let map = parse_kv_file(text)?;
    let mut config = FileConfig {
        order: None,
        alpha: None,
        beta: None,
        seed: None,
        compare: None,
        bounds: BoxSpec::default(),
    };
    for (key, value) in &map {
        match key.as_str() {
            "order" => config.order = Some(value.parse().context("order")?),
            "alpha" => config.alpha = Some(value.parse().context("alpha")?),
            "beta" => config.beta = Some(value.parse().context("beta")?),
            "seed" => config.seed = Some(value.parse().context("seed")?),
            "compare" => config.compare = Some(value.parse().context("compare")?),
            "s" => config.bounds.s = Some(parse_range(value)?),
            "t" => config.bounds.t = Some(parse_range(value)?),
            "a" => config.bounds.a = Some(parse_range(value)?),
            "b" => config.bounds.b = Some(parse_range(value)?),
            other => bail!("unknown config key {other:?}"),
        }
    }
    Ok(config)
}
