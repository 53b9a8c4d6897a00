// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! File formats, configuration, and the experiment harness behind the
//! `sigmark` binary.

pub mod bench;
pub mod config;
pub mod corpus;
pub mod formats;
pub mod pngio;
