#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffinc/field.hpp"
#include "ffinc/prng.hpp"

namespace ffinc {

struct Provenance {
    std::string kind = "literal";
    std::map<std::string, std::int64_t> params;
    std::uint64_t seed = 0;
};

/// Nonempty, strictly increasing set of residues mod p, with the generator
/// descriptor that produced it. Immutable after construction.
class Subset {
public:
    Subset(std::uint32_t p, std::vector<Residue> elements, Provenance prov = {});

    std::uint32_t p() const { return p_; }
    const std::vector<Residue>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    const Provenance& provenance() const { return prov_; }

    /// Dense membership table over [0, p).
    std::vector<std::uint8_t> bitmap() const;

    std::string to_json() const;
    static Subset from_json(const std::string& text);

    void save(const std::string& path) const;
    static Subset load(const std::string& path);

private:
    std::uint32_t p_;
    std::vector<Residue> elems_;
    Provenance prov_;
};

enum class GenKind { random_elements, interval, arith_prog, geom_prog, subgroup };

GenKind gen_kind_from_string(const std::string& s);
std::string to_string(GenKind kind);

/// Deterministic set generation. Recognized params per kind:
///   random:     size
///   interval:   size, start (default 1)
///   arith_prog: size, start (default 1), step (default 1, nonzero mod p)
///   geom_prog:  size, start (default 1, nonzero), ratio (required, nonzero)
///   subgroup:   order (must divide p - 1)
Subset gen_subset(const FieldCtx& ctx, GenKind kind,
                  const std::map<std::string, std::int64_t>& params,
                  std::uint64_t seed);

} // namespace ffinc
