//! Versioned binary cache for irreducible inventories, keyed by the group
//! and field spec strings. Layout (all integers little-endian):
//!
//! ```text
//! magic   u32  = 0x4D464956 ("MFIV")
//! version u16  = 1
//! entry   u16  = 4 (bytes per matrix entry)
//! p, k, q u32
//! group spec: u32 length + utf-8 bytes
//! field spec: u32 length + utf-8 bytes
//! count   u32
//! per factor: dim u32, multiplicity u32, n_gens u32,
//!             n_gens * dim * dim entries (u32 codes)
//! ```
//!
//! Loads re-run the full certification, so a stale or corrupted cache can
//! reject but never mislead.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::groups::FiniteGroup;
use crate::linalg::MatrixFq;
use crate::meataxe::IrreducibleInventory;
use std::io::{Read, Write};
use std::path::Path;

pub const CACHE_MAGIC: u32 = 0x4D46_4956;
pub const CACHE_VERSION: u16 = 1;
pub const ENTRY_BYTES: u16 = 4;

pub fn write_inventory_cache(
    path: &Path,
    group_spec: &str,
    field_spec: &str,
    inv: &IrreducibleInventory,
) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(&CACHE_MAGIC.to_le_bytes());
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.extend_from_slice(&ENTRY_BYTES.to_le_bytes());
    buf.extend_from_slice(&(inv.ctx().p() as u32).to_le_bytes());
    buf.extend_from_slice(&inv.ctx().k().to_le_bytes());
    buf.extend_from_slice(&(inv.ctx().q() as u32).to_le_bytes());
    for s in [group_spec, field_spec] {
        buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
        buf.extend_from_slice(s.as_bytes());
    }
    buf.extend_from_slice(&(inv.len() as u32).to_le_bytes());
    for (rep, &mult) in inv.representations().iter().zip(inv.multiplicity_in_regular()) {
        let gens = rep.generator_images();
        buf.extend_from_slice(&(rep.dim() as u32).to_le_bytes());
        buf.extend_from_slice(&(mult as u32).to_le_bytes());
        buf.extend_from_slice(&(gens.len() as u32).to_le_bytes());
        for m in &gens {
            for &e in m.entries() {
                buf.extend_from_slice(&e.to_le_bytes());
            }
        }
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(&buf)?;
    Ok(())
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn u16(&mut self) -> Result<u16> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }
    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.data.len() {
            return Err(Error::Parse("inventory cache truncated".into()));
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }
    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| Error::Parse("cache string not utf-8".into()))
    }
}

/// Loads and re-certifies a cached inventory. Returns Ok(None) when the
/// cache exists but is keyed to a different (group, field) pair.
pub fn read_inventory_cache(
    path: &Path,
    group_spec: &str,
    field_spec: &str,
    group: &FiniteGroup,
    ctx: &FieldCtx,
) -> Result<Option<IrreducibleInventory>> {
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    let mut r = Reader { data: &data, pos: 0 };
    if r.u32()? != CACHE_MAGIC {
        return Err(Error::Parse("bad inventory cache magic".into()));
    }
    if r.u16()? != CACHE_VERSION {
        return Err(Error::Parse("unsupported inventory cache version".into()));
    }
    if r.u16()? != ENTRY_BYTES {
        return Err(Error::Parse("unsupported cache entry width".into()));
    }
    let (p, k, q) = (r.u32()? as u64, r.u32()?, r.u32()? as u64);
    let cached_group = r.string()?;
    let cached_field = r.string()?;
    if cached_group != group_spec || cached_field != field_spec {
        return Ok(None);
    }
    if p != ctx.p() || k != ctx.k() || q != ctx.q() {
        return Err(Error::Parse("cache field header disagrees with its field spec".into()));
    }
    let count = r.u32()? as usize;
    let mut gen_images = Vec::with_capacity(count);
    let mut mults = Vec::with_capacity(count);
    for _ in 0..count {
        let dim = r.u32()? as usize;
        let mult = r.u32()? as usize;
        let n_gens = r.u32()? as usize;
        let mut gens = Vec::with_capacity(n_gens);
        for _ in 0..n_gens {
            let mut m = MatrixFq::zero(ctx, dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    let e = r.u32()?;
                    if e as u64 >= ctx.q() {
                        return Err(Error::Parse("cache entry out of field range".into()));
                    }
                    m.set(i, j, e);
                }
            }
            gens.push(m);
        }
        gen_images.push(gens);
        mults.push(mult);
    }
    Ok(Some(IrreducibleInventory::from_parts(group, ctx, gen_images, mults)?))
}
