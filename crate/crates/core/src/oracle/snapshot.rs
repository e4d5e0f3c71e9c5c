//! Versioned binary snapshots of oracle states, for long scripted
//! experiments.

use std::collections::BTreeMap;

use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::finite::FiniteGroupRep;
use crate::gtcompress::CompressedGt;
use crate::oracle::{Backend, IrrepId, Key, Label, OracleState};
use crate::C64;

const MAGIC: u32 = 0x4347_4f31; // "CGO1"
const VERSION: u32 = 1;

fn write_label(w: &mut Writer, label: &Label) {
    match label {
        Label::Compressed(c) => {
            w.u8(0);
            w.u64(c.mtilde.len() as u64);
            for row in &c.mtilde {
                w.i64_seq(row);
            }
            w.u32_seq(&c.p);
        }
        Label::Index(i) => {
            w.u8(1);
            w.u32(*i);
        }
    }
}

fn read_label(r: &mut Reader) -> Result<Label> {
    match r.u8()? {
        0 => {
            let rows = r.u64()? as usize;
            let mtilde = (0..rows)
                .map(|_| r.i64_seq())
                .collect::<Result<Vec<_>>>()?;
            let p = r.u32_seq()?;
            Ok(Label::Compressed(CompressedGt { mtilde, p }))
        }
        1 => Ok(Label::Index(r.u32()?)),
        other => Err(Error::Codec(format!("unknown label tag {other}"))),
    }
}

/// Serialises a state. The backend is recorded as a descriptor (kind, d or
/// group name); finite backends are reconstructed against a caller-supplied
/// group on load.
pub fn save_state(state: &OracleState) -> Vec<u8> {
    let mut w = Writer::new();
    w.u32(MAGIC);
    w.u32(VERSION);
    match &state.backend {
        Backend::UFast { d } => {
            w.u8(0);
            w.u32(*d);
        }
        Backend::UDense { d, .. } => {
            w.u8(1);
            w.u32(*d);
        }
        Backend::Finite { rep, .. } => {
            w.u8(2);
            w.str(&rep.name);
        }
    }
    w.u32_seq(&state.sys_dims);
    w.u64(state.amps.len() as u64);
    for (key, amp) in &state.amps {
        match &key.irrep {
            IrrepId::Weight(rows) => {
                w.u8(0);
                w.i64_seq(rows);
            }
            IrrepId::Finite(i) => {
                w.u8(1);
                w.u64(*i as u64);
            }
        }
        write_label(&mut w, &key.m_out);
        write_label(&mut w, &key.m_in);
        w.u32_seq(&key.sys);
        w.f64(amp.re);
        w.f64(amp.im);
    }
    w.finish()
}

/// Restores a state saved by [`save_state`]. `group` must be supplied for
/// finite-backend snapshots and is checked against the recorded name.
pub fn load_state(bytes: &[u8], group: Option<FiniteGroupRep>) -> Result<OracleState> {
    let mut r = Reader::new(bytes);
    if r.u32()? != MAGIC {
        return Err(Error::Codec("bad snapshot magic".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Codec(format!("unsupported snapshot version {version}")));
    }
    let backend = match r.u8()? {
        0 => Backend::u_fast(r.u32()?),
        1 => Backend::u_dense(r.u32()?),
        2 => {
            let name = r.str()?;
            let rep = group.ok_or_else(|| {
                Error::Codec(format!("snapshot needs finite group '{name}'"))
            })?;
            if rep.name != name {
                return Err(Error::Codec(format!(
                    "snapshot group '{name}' does not match supplied '{}'",
                    rep.name
                )));
            }
            Backend::finite(rep)
        }
        other => return Err(Error::Codec(format!("unknown backend tag {other}"))),
    };
    let sys_dims = r.u32_seq()?;
    let n = r.u64()? as usize;
    let mut amps = BTreeMap::new();
    for _ in 0..n {
        let irrep = match r.u8()? {
            0 => IrrepId::Weight(r.i64_seq()?),
            1 => IrrepId::Finite(r.u64()? as usize),
            other => return Err(Error::Codec(format!("unknown irrep tag {other}"))),
        };
        let m_out = read_label(&mut r)?;
        let m_in = read_label(&mut r)?;
        let sys = r.u32_seq()?;
        let re = r.f64()?;
        let im = r.f64()?;
        amps.insert(
            Key {
                irrep,
                m_out,
                m_in,
                sys,
            },
            C64::new(re, im),
        );
    }
    if !r.done() {
        return Err(Error::Codec("trailing bytes in snapshot".into()));
    }
    Ok(OracleState {
        backend,
        sys_dims,
        amps,
    })
}
