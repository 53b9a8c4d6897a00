// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! Self-describing text formats for models, keys, reports, and channel
//! sessions.
//!
//! Every document is a sequence of `key: value` lines with a
//! `format_version` and `kind` header. Floating point values use Rust's
//! shortest round-trip formatting, so write-then-read reproduces the
//! exact bits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigUint;

use sigmark_core::channel::{ChannelModel, ChannelSession};
use sigmark_core::decoder::LinearDecoderModel;
use sigmark_core::framework::VerificationReport;
use sigmark_core::painting::{PaintingScheme, SchemeKind};
use sigmark_core::signature::{KeyPair, PublicKey, SecretKey};

const FORMAT_VERSION: u32 = 1;

/// Parsed `key: value` document; repeated keys keep all values in order.
struct Document {
    values: BTreeMap<String, Vec<String>>,
    kind: String,
}

impl Document {
    fn parse(text: &str, expect_kind: &str) -> Result<Document> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| anyhow!("line {}: expected `key: value`", lineno + 1))?;
            values
                .entry(key.trim().to_string())
                .or_default()
                .push(value.trim().to_string());
        }
        let version: u32 = values
            .get("format_version")
            .and_then(|v| v.first())
            .ok_or_else(|| anyhow!("missing format_version"))?
            .parse()
            .context("bad format_version")?;
        if version != FORMAT_VERSION {
            bail!("unsupported format_version {version}");
        }
        let kind = values
            .get("kind")
            .and_then(|v| v.first())
            .ok_or_else(|| anyhow!("missing kind"))?
            .clone();
        if kind != expect_kind {
            bail!("expected kind {expect_kind}, found {kind}");
        }
        Ok(Document { values, kind })
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.values
            .get(key)
            .and_then(|v| v.first())
            .map(String::as_str)
            .ok_or_else(|| anyhow!("{}: missing field `{key}`", self.kind))
    }

    fn get_all(&self, key: &str) -> &[String] {
        self.values.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    fn get_opt(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.first()).map(String::as_str)
    }
}

fn parse_floats(s: &str, expect: usize, what: &str) -> Result<Vec<f64>> {
    let vals: Vec<f64> = s
        .split_whitespace()
        .map(|t| t.parse::<f64>().with_context(|| format!("bad float in {what}")))
        .collect::<Result<_>>()?;
    if vals.len() != expect {
        bail!("{what}: expected {expect} values, found {}", vals.len());
    }
    Ok(vals)
}

fn join_floats(vals: &[f64]) -> String {
    let mut out = String::new();
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out
}

// --- decoder model files ---

pub fn render_model(model: &LinearDecoderModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(out, "kind: decoder-model");
    let _ = writeln!(out, "n: {}", model.scheme().modulus());
    let _ = writeln!(out, "scheme: {}", model.scheme().kind().label());
    let offsets: Vec<String> = model.scheme().offsets().iter().map(u32::to_string).collect();
    let _ = writeln!(out, "offsets: {}", offsets.join(","));
    let _ = writeln!(out, "threshold: {}", model.threshold());
    let _ = writeln!(out, "bias: {}", join_floats(model.bias()));
    for r in 0..64 {
        let _ = writeln!(out, "row: {}", join_floats(&model.weights()[r * 64..(r + 1) * 64]));
    }
    out
}

pub fn parse_model(text: &str) -> Result<LinearDecoderModel> {
    let doc = Document::parse(text, "decoder-model")?;
    let n: u32 = doc.get("n")?.parse().context("bad n")?;
    let kind = SchemeKind::from_label(doc.get("scheme")?)
        .ok_or_else(|| anyhow!("unknown scheme label"))?;
    let offsets: Vec<u32> = doc
        .get("offsets")?
        .split(',')
        .map(|t| t.trim().parse::<u32>().context("bad offset"))
        .collect::<Result<_>>()?;
    let scheme = PaintingScheme::from_offsets(kind, offsets, n)
        .map_err(|e| anyhow!("invalid scheme: {e}"))?;
    let threshold: f64 = doc.get("threshold")?.parse().context("bad threshold")?;
    let bias = parse_floats(doc.get("bias")?, 64, "bias")?;
    let rows = doc.get_all("row");
    if rows.len() != 64 {
        bail!("expected 64 weight rows, found {}", rows.len());
    }
    let mut weights = Vec::with_capacity(64 * 64);
    for row in rows {
        weights.extend(parse_floats(row, 64, "weight row")?);
    }
    LinearDecoderModel::new(weights, bias, scheme, threshold)
        .map_err(|e| anyhow!("invalid model: {e}"))
}

pub fn write_model(path: &Path, model: &LinearDecoderModel) -> Result<()> {
    fs::write(path, render_model(model)).with_context(|| format!("writing {}", path.display()))
}

pub fn read_model(path: &Path) -> Result<LinearDecoderModel> {
    parse_model(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

// --- key files ---

fn hex_biguint(v: &BigUint) -> String {
    v.to_str_radix(16)
}

fn parse_biguint(s: &str, what: &str) -> Result<BigUint> {
    BigUint::parse_bytes(s.as_bytes(), 16).ok_or_else(|| anyhow!("bad hex in {what}"))
}

pub fn render_public_key(key: &PublicKey) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(out, "kind: rsa-public");
    let _ = writeln!(out, "n: {}", hex_biguint(key.modulus()));
    let _ = writeln!(out, "e: {}", hex_biguint(key.exponent()));
    out
}

pub fn render_keypair(key: &SecretKey) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(out, "kind: rsa-keypair");
    let _ = writeln!(out, "n: {}", hex_biguint(key.modulus()));
    let _ = writeln!(out, "e: {}", hex_biguint(key.exponent()));
    let _ = writeln!(out, "d: {}", hex_biguint(key.d()));
    let _ = writeln!(out, "p: {}", hex_biguint(key.p()));
    let _ = writeln!(out, "q: {}", hex_biguint(key.q()));
    out
}

pub fn parse_public_key(text: &str) -> Result<PublicKey> {
    // Accept either a public or a full keypair file.
    if let Ok(doc) = Document::parse(text, "rsa-public") {
        let n = parse_biguint(doc.get("n")?, "n")?;
        let e = parse_biguint(doc.get("e")?, "e")?;
        return PublicKey::new(n, e).map_err(|e| anyhow!("invalid key: {e}"));
    }
    Ok(parse_keypair(text)?.public)
}

pub fn parse_keypair(text: &str) -> Result<KeyPair> {
    let doc = Document::parse(text, "rsa-keypair")?;
    let n = parse_biguint(doc.get("n")?, "n")?;
    let e = parse_biguint(doc.get("e")?, "e")?;
    let d = parse_biguint(doc.get("d")?, "d")?;
    let p = parse_biguint(doc.get("p")?, "p")?;
    let q = parse_biguint(doc.get("q")?, "q")?;
    let secret =
        SecretKey::new(n.clone(), e.clone(), d, p, q).map_err(|e| anyhow!("invalid key: {e}"))?;
    let public = PublicKey::new(n, e).map_err(|e| anyhow!("invalid key: {e}"))?;
    Ok(KeyPair { public, secret })
}

pub fn write_keypair(path: &Path, pair: &KeyPair) -> Result<()> {
    fs::write(path, render_keypair(&pair.secret))
        .with_context(|| format!("writing {}", path.display()))
}

pub fn write_public_key(path: &Path, key: &PublicKey) -> Result<()> {
    fs::write(path, render_public_key(key)).with_context(|| format!("writing {}", path.display()))
}

pub fn read_keypair(path: &Path) -> Result<KeyPair> {
    parse_keypair(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

pub fn read_public_key(path: &Path) -> Result<PublicKey> {
    parse_public_key(
        &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
    )
}

// --- verification reports ---

pub fn render_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(out, "kind: verification-report");
    let _ = writeln!(out, "verified: {}", report.verified);
    let _ = writeln!(out, "phash: {}", report.phash.to_hex());
    let _ = writeln!(
        out,
        "recovered_signature: {}",
        report.recovered_signature.to_hex().unwrap_or_default()
    );
    if let Some(raw) = report.raw_ber {
        let _ = writeln!(out, "raw_ber: {raw}");
    }
    if let Some(corrected) = report.corrected_ber {
        let _ = writeln!(out, "corrected_ber: {corrected}");
    }
    for (i, bits) in report.per_patch_raw.iter().enumerate() {
        let _ = writeln!(out, "patch_raw_{i}: {}", bits.to_hex().unwrap_or_default());
    }
    for (i, bits) in report.per_patch_corrected.iter().enumerate() {
        let _ = writeln!(out, "patch_corrected_{i}: {}", bits.to_hex().unwrap_or_default());
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

// --- simulated channel session sidecars ---

/// Persists a simulated session so a separate process can verify.
pub fn render_session(model: &ChannelModel, session: &ChannelSession) -> Result<String> {
    let sim = session
        .as_simulated()
        .ok_or_else(|| anyhow!("only simulated sessions are persisted"))?;
    let mut out = String::new();
    let _ = writeln!(out, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(out, "kind: channel-session");
    let _ = writeln!(out, "channel: simulated");
    let _ = writeln!(out, "intrinsic_error_rate: {}", model.intrinsic_error_rate);
    let _ = writeln!(out, "distortion_rate: {}", model.distortion_rate);
    let _ = writeln!(out, "seed: {}", model.seed);
    let _ = writeln!(out, "distort_calls: {}", sim.distort_calls());
    for (origin, payload, distortion) in sim.export_records() {
        let _ = writeln!(
            out,
            "record: {},{} {payload:016x} {distortion:016x}",
            origin.0, origin.1
        );
    }
    Ok(out)
}

/// Restores a simulated session (and its model) from a sidecar document.
pub fn parse_session(text: &str) -> Result<(ChannelModel, ChannelSession)> {
    let doc = Document::parse(text, "channel-session")?;
    let intrinsic: f64 = doc.get("intrinsic_error_rate")?.parse()?;
    let distortion: f64 = doc.get("distortion_rate")?.parse()?;
    let seed: u64 = doc.get("seed")?.parse()?;
    let model = ChannelModel::simulated(intrinsic, distortion, seed)
        .map_err(|e| anyhow!("invalid channel: {e}"))?;
    let mut session = model.session();
    {
        let sim = session.as_simulated_mut().expect("simulated by construction");
        if let Some(calls) = doc.get_opt("distort_calls") {
            sim.set_distort_calls(calls.parse()?);
        }
        for record in doc.get_all("record") {
            let mut parts = record.split_whitespace();
            let origin = parts
                .next()
                .ok_or_else(|| anyhow!("bad record line"))?
                .split_once(',')
                .ok_or_else(|| anyhow!("bad record origin"))?;
            let payload = u64::from_str_radix(
                parts.next().ok_or_else(|| anyhow!("bad record payload"))?,
                16,
            )?;
            let distortion = u64::from_str_radix(
                parts.next().ok_or_else(|| anyhow!("bad record distortion"))?,
                16,
            )?;
            sim.restore_record((origin.0.parse()?, origin.1.parse()?), payload, distortion);
        }
    }
    Ok((model, session))
}

pub fn write_session(path: &Path, model: &ChannelModel, session: &ChannelSession) -> Result<()> {
    fs::write(path, render_session(model, session)?)
        .with_context(|| format!("writing {}", path.display()))
}

pub fn read_session(path: &Path) -> Result<(ChannelModel, ChannelSession)> {
    parse_session(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}
