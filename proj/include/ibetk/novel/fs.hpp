#pragma once

#include <map>

#include "ibetk/novel/hibe.hpp"

namespace ibetk {

// Forward-secure HIBE over a binary time tree. A node key for time-node w
// (depth d) and identity tuple (I_1..I_j) is a HIBE-shaped key over the
// grid of cells (k, m), 1 <= k <= d, 0 <= m <= j: cell (k, m) carries the
// hash of (time prefix w|_k, identity prefix I_1..I_m) against its own grid
// exponent a_{k,m}. Both time extension (new row) and identity delegation
// (new column) only ever add cells, so either order of acquisition reaches
// the same key material.
struct FsParams {
    unsigned ell = 0; // tree depth, N = 2^ell periods
    unsigned v = 0;   // identity depth bound
    unsigned n_bits = 128;
    Point g, Ppub1;
    Gt x;
    std::vector<std::vector<Gt>> y;    // y[k-1][m] = x^{a_{k,m}}
    std::vector<std::vector<Point>> A; // A[k-1][m] = g^{a_{k,m}}
};

struct FsMaster {
    Fp l;
    std::vector<std::vector<Fp>> a;
};

using Cell = std::pair<unsigned, unsigned>; // (k, m), k time row, m id column

struct FsNodeKey {
    std::string word; // time-node bits, MSB first
    Point d0;
    Point corr;
    std::map<Cell, Point> tail; // unacquired cells -> g^{a_{k,m}/l}
};

struct FsKeyBundle {
    unsigned ell = 0;
    Int period = 0;
    std::vector<Int> ids;
    Point t0;    // g^{1/l}
    Bytes chain; // evolving one-way seed for update/derive randomness
    std::map<std::string, FsNodeKey> nodes;

    unsigned depth() const { return static_cast<unsigned>(ids.size()); }
};

struct FsCiphertext {
    Int period = 0;
    unsigned depth = 0;
    Point uprime, udouble;
    Gt c;
};

struct OurFsHibe {
    static constexpr SchemeId id = SchemeId::FsHibe;

    static std::string word_of(const Int& period, unsigned ell) {
        std::string w(ell, '0');
        for (unsigned k = 0; k < ell; ++k)
            if (bit_at(period, ell - 1 - k)) w[k] = '1';
        return w;
    }

    static Int period_count(unsigned ell) { return Int(1) << ell; }

    // Component of cell (k, m) for time prefix w|_k and identity prefix
    // I_1..I_m; the node word is concatenated into the hash, so sibling
    // subtrees get unrelated components.
    static Fp cell_component(const Profile& pr, unsigned k, unsigned m, const std::string& word,
                             const std::vector<Int>& ids) {
        Xof x("ibetk/fs-cell");
        x.feed_u64(k);
        x.feed_u64(m);
        x.feed(word.substr(0, k));
        for (unsigned i = 0; i < m; ++i) x.feed(to_bytes(ids[i]));
        Bytes raw = x.squeeze((bit_length(pr.r()) + 7) / 8 + 16);
        return pr.fr_elem(from_bytes(raw));
    }

    static std::pair<FsParams, FsMaster> setup_params(const Profile& pr, unsigned v, unsigned ell,
                                                      unsigned n_bits, Drbg& rng) {
        if (ell < 1) throw error("fs setup: need at least two periods");
        check_message_bits(pr, n_bits);
        Point G = pr.curve().to_affine(pr.generator());
        FsParams params;
        params.ell = ell;
        params.v = v;
        params.n_bits = n_bits;
        params.g = G;
        FsMaster msk;
        msk.l = random_zr(pr, rng);
        params.Ppub1 = pr.curve().to_affine(pr.curve().scalar_mul(msk.l.value(), G));
        params.x = pair_points(pr, G, G);
        params.y.resize(ell);
        params.A.resize(ell);
        msk.a.resize(ell);
        for (unsigned k = 0; k < ell; ++k)
            for (unsigned m = 0; m <= v; ++m) {
                Fp akm = random_zr(pr, rng);
                msk.a[k].push_back(akm);
                params.y[k].push_back(params.x.pow(akm.value()));
                params.A[k].push_back(pr.curve().to_affine(pr.curve().scalar_mul(akm.value(), G)));
            }
        return {std::move(params), std::move(msk)};
    }

    static std::vector<Cell> node_cells(unsigned d, unsigned j) {
        std::vector<Cell> cells;
        for (unsigned k = 1; k <= d; ++k)
            for (unsigned m = 0; m <= j; ++m) cells.emplace_back(k, m);
        return cells;
    }

    static FsNodeKey node_from_msk(const Profile& pr, const FsParams& params, const FsMaster& msk,
                                   const std::string& word, const std::vector<Int>& ids,
                                   Drbg& rng) {
        auto d = static_cast<unsigned>(word.size());
        auto j = static_cast<unsigned>(ids.size());
        Fp s = random_zr(pr, rng);
        Fp acc = Fp::raw(pr.fr().get(), 0);
        for (int attempt = 0;; ++attempt) {
            acc = Fp::raw(pr.fr().get(), 0);
            for (const Cell& c : node_cells(d, j)) {
                Fp a = msk.a[c.first - 1][c.second];
                if (c.first == d && c.second == j) a = s * a;
                acc = acc + a + cell_component(pr, c.first, c.second, word, ids);
            }
            if (!acc.is_zero()) break;
            if (attempt > 64) throw error("fs node: degenerate exponent persists");
            s = random_zr(pr, rng);
        }
        Fp linv = fp_inv(msk.l);
        FsNodeKey node;
        node.word = word;
        node.d0 = pr.curve().to_affine(pr.curve().scalar_mul((acc * linv).value(), pr.generator()));
        Fp sm1 = s - Fp::raw(pr.fr().get(), 1);
        node.corr = pr.curve().to_affine(pr.curve().scalar_mul(sm1.value(), params.A[d - 1][j]));
        for (unsigned k = 1; k <= params.ell; ++k)
            for (unsigned m = 0; m <= params.v; ++m)
                if (k > d || m > j)
                    node.tail[{k, m}] = pr.curve().to_affine(pr.curve().scalar_mul(
                        (msk.a[k - 1][m] * linv).value(), pr.generator()));
        return node;
    }

    // Append a batch of cells to a node key using only its tail; the last
    // cell of the batch carries the fresh randomization.
    static FsNodeKey extend_node(const Profile& pr, const FsParams& params, const FsKeyBundle& bundle,
                                 const FsNodeKey& node, const std::string& new_word,
                                 const std::vector<Int>& new_ids, const std::vector<Cell>& batch,
                                 Drbg& rng) {
        if (batch.empty()) throw error("fs extend: empty cell batch");
        FsNodeKey out;
        out.word = new_word;
        out.tail = node.tail;
        for (const Cell& c : batch) {
            if (!out.tail.count(c)) throw error("fs extend: tail cell missing");
            out.tail.erase(c);
        }
        const Cell& last = batch.back();
        Fp s = random_zr(pr, rng);
        for (int attempt = 0;; ++attempt) {
            Point acc = node.d0;
            for (const Cell& c : batch) {
                Fp chi = cell_component(pr, c.first, c.second, new_word, new_ids);
                Point base = node.tail.at(c);
                Point a_part = (c == last) ? pr.curve().scalar_mul(s.value(), base) : base;
                acc = pr.curve().add(acc, a_part);
                acc = pr.curve().add(acc, pr.curve().scalar_mul(chi.value(), bundle.t0));
            }
            if (!acc.is_infinity()) {
                out.d0 = pr.curve().to_affine(acc);
                break;
            }
            if (attempt > 64) throw error("fs extend: degenerate exponent persists");
            s = random_zr(pr, rng);
        }
        Fp sm1 = s - Fp::raw(pr.fr().get(), 1);
        Point corr_step = pr.curve().scalar_mul(sm1.value(), params.A[last.first - 1][last.second]);
        out.corr = pr.curve().to_affine(pr.curve().add(node.corr, corr_step));
        return out;
    }

    // CompNext: child node keys for time nodes w0 and w1.
    static std::pair<FsNodeKey, FsNodeKey> comp_next(const Profile& pr, const FsParams& params,
                                                     const FsKeyBundle& bundle, const FsNodeKey& node,
                                                     Drbg& rng) {
        auto d = static_cast<unsigned>(node.word.size());
        auto j = static_cast<unsigned>(bundle.ids.size());
        std::vector<Cell> batch;
        for (unsigned m = 0; m <= j; ++m) batch.emplace_back(d + 1, m);
        FsNodeKey left = extend_node(pr, params, bundle, node, node.word + "0", bundle.ids, batch, rng);
        FsNodeKey right = extend_node(pr, params, bundle, node, node.word + "1", bundle.ids, batch, rng);
        return {std::move(left), std::move(right)};
    }

    // Root bundle for period 0: leaf 0^ell plus the right siblings of the
    // all-zero path, all built from the master secret.
    static FsKeyBundle root_bundle(const Profile& pr, const FsParams& params, const FsMaster& msk,
                                   Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Setup");
        FsKeyBundle b;
        b.ell = params.ell;
        b.period = 0;
        {
            LedgerPause pause(pr.ledger());
            b.chain = rng.bytes(32);
        }
        Fp linv = fp_inv(msk.l);
        b.t0 = pr.curve().to_affine(pr.curve().scalar_mul(linv.value(), pr.generator()));
        std::string zeros(params.ell, '0');
        b.nodes[zeros] = node_from_msk(pr, params, msk, zeros, b.ids, rng);
        for (unsigned k = 1; k <= params.ell; ++k) {
            std::string sibling = zeros.substr(0, k - 1) + "1";
            b.nodes[sibling] = node_from_msk(pr, params, msk, sibling, b.ids, rng);
        }
        return b;
    }

    static Drbg chain_rng(FsKeyBundle& b, std::string_view label) {
        Xof x("ibetk/fs-chain");
        x.feed(label);
        x.feed(b.chain);
        Bytes next = x.squeeze(40);
        Drbg rng(from_bytes(Bytes(next.begin() + 32, next.end())).get_ui(), "fs");
        b.chain.assign(next.begin(), next.begin() + 32); // one-way step
        return rng;
    }

    // Key update to period i+1: drop the expired leaf; when the leaf was a
    // right child, expand the stored sibling subtree down its left spine.
    static FsKeyBundle update(const Profile& pr, const FsParams& params, const FsKeyBundle& bundle) {
        PhaseScope phase(pr.ledger(), "Update");
        if (bundle.period + 1 >= period_count(params.ell)) throw error("fs update: final period has no successor");
        FsKeyBundle next = bundle;
        Drbg rng = chain_rng(next, "update");
        std::string leaf = word_of(bundle.period, params.ell);
        next.nodes.erase(leaf);
        if (leaf.back() == '1') {
            // largest k with bit 0; its right sibling is stored
            auto kt = leaf.find_last_of('0');
            if (kt == std::string::npos) throw error("fs update: inconsistent bundle");
            std::string expand = leaf.substr(0, kt) + "1";
            auto it = next.nodes.find(expand);
            if (it == next.nodes.end()) throw error("fs update: sibling key missing");
            FsNodeKey walk = it->second;
            next.nodes.erase(it);
            while (walk.word.size() < params.ell) {
                auto [left, right] = comp_next(pr, params, next, walk, rng);
                next.nodes[right.word] = right;
                walk = left;
            }
            next.nodes[walk.word] = walk;
        }
        next.period = bundle.period + 1;
        return next;
    }

    // Identity delegation at the current period: every node key in the
    // bundle gains the new identity column, parent material only.
    static FsKeyBundle derive(const Profile& pr, const FsParams& params, const FsKeyBundle& bundle,
                              const Int& id_next) {
        PhaseScope phase(pr.ledger(), "Extract");
        auto j = static_cast<unsigned>(bundle.ids.size());
        if (j >= params.v) throw error("fs derive: identity depth overflow");
        Int idv = id_next % pr.r();
        if (idv < 0) idv += pr.r();
        FsKeyBundle child = bundle;
        Drbg rng = chain_rng(child, "derive");
        child.ids.push_back(idv);
        child.nodes.clear();
        for (const auto& [word, node] : bundle.nodes) {
            auto d = static_cast<unsigned>(word.size());
            std::vector<Cell> batch;
            for (unsigned k = 1; k <= d; ++k) batch.emplace_back(k, j + 1);
            child.nodes[word] =
                extend_node(pr, params, child, node, word, child.ids, batch, rng);
        }
        return child;
    }

    static FsCiphertext encrypt(const Profile& pr, const FsParams& params, const Int& period,
                                const std::vector<Int>& ids_in, const Gt& m, Drbg& rng) {
        PhaseScope phase(pr.ledger(), "Encrypt");
        if (period < 0 || period >= period_count(params.ell)) throw error("fs encrypt: period out of range");
        auto ids = OurHibe::reduce_ids(pr, ids_in);
        if (ids.size() > params.v) throw error("fs encrypt: tuple depth out of range");
        std::string leaf = word_of(period, params.ell);
        auto j = static_cast<unsigned>(ids.size());
        Fp s = random_zr(pr, rng);
        FsCiphertext ct;
        ct.period = period;
        ct.depth = j;
        ct.uprime = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.Ppub1));
        ct.udouble = pr.curve().to_affine(pr.curve().scalar_mul(s.value(), params.g));
        Fp chisum = Fp::raw(pr.fr().get(), 0);
        Gt prod = Gt(Fp2::one(pr.fp2()));
        for (const Cell& c : node_cells(params.ell, j)) {
            chisum = chisum + cell_component(pr, c.first, c.second, leaf, ids);
            prod = prod * params.y[c.first - 1][c.second];
        }
        Gt head = params.x.pow(chisum.value()) * prod;
        ct.c = head.pow_seeded(m, s.value());
        return ct;
    }

    static std::optional<Gt> decrypt(const Profile& pr, const FsParams& params,
                                     const FsKeyBundle& bundle, const FsCiphertext& ct) {
        PhaseScope phase(pr.ledger(), "Decrypt");
        if (ct.depth != bundle.depth()) throw error("fs decrypt: identity depth mismatch");
        std::string leaf = word_of(bundle.period, params.ell);
        auto it = bundle.nodes.find(leaf);
        if (it == bundle.nodes.end()) throw error("fs decrypt: bundle lacks its own leaf key");
        const FsNodeKey& node = it->second;
        Gt fix = tate_pairing(pr, pr.curve().to_affine(ct.udouble),
                              node.corr.is_infinity() ? ExtPoint::infinity() : pr.distort(node.corr));
        Gt main = pair_points(pr, ct.uprime, node.d0);
        return (ct.c * fix) / main;
    }
};

} // namespace ibetk
