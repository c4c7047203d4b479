#include "ffinc/subset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ffinc {

Subset::Subset(std::uint32_t p, std::vector<Residue> elements, Provenance prov)
    : p_(p), elems_(std::move(elements)), prov_(std::move(prov)) {
    if (elems_.empty()) fail(Errc::bad_params, "subset must be nonempty");
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i] >= p_)
            fail(Errc::bad_params, "element " + std::to_string(elems_[i]) +
                                       " out of range for p=" + std::to_string(p_));
        if (i > 0 && elems_[i] <= elems_[i - 1])
            fail(Errc::bad_params, "elements must be strictly increasing");
    }
}

std::vector<std::uint8_t> Subset::bitmap() const {
    std::vector<std::uint8_t> bits(p_, 0);
    for (Residue r : elems_) bits[r] = 1;
    return bits;
}

std::string Subset::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["elements"] = elems_;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : prov_.params) params[k] = v;
    j["provenance"] = {{"kind", prov_.kind}, {"params", params}, {"seed", prov_.seed}};
    return j.dump(2) + "\n";
}

Subset Subset::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::io_error, std::string("invalid subset JSON: ") + e.what());
    }
    try {
        const auto p = j.at("p").get<std::uint32_t>();
        auto elements = j.at("elements").get<std::vector<Residue>>();
        Provenance prov;
        if (j.contains("provenance")) {
            const auto& pj = j["provenance"];
            prov.kind = pj.value("kind", std::string("literal"));
            prov.seed = pj.value("seed", std::uint64_t{0});
            if (pj.contains("params"))
                for (const auto& [k, v] : pj["params"].items())
                    prov.params[k] = v.get<std::int64_t>();
        }
        return Subset(p, std::move(elements), std::move(prov));
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::io_error, std::string("malformed subset JSON: ") + e.what());
    }
}

void Subset::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
    out << to_json();
    if (!out) fail(Errc::io_error, "write failed: " + path);
}

Subset Subset::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "random") return GenKind::random_elements;
    if (s == "interval") return GenKind::interval;
    if (s == "arith_prog") return GenKind::arith_prog;
    if (s == "geom_prog") return GenKind::geom_prog;
    if (s == "subgroup") return GenKind::subgroup;
    fail(Errc::bad_params, "unknown generator kind: " + s);
}

std::string to_string(GenKind kind) {
    switch (kind) {
        case GenKind::random_elements: return "random";
        case GenKind::interval: return "interval";
        case GenKind::arith_prog: return "arith_prog";
        case GenKind::geom_prog: return "geom_prog";
        case GenKind::subgroup: return "subgroup";
    }
    return "?";
}

namespace {

std::int64_t get_param(const std::map<std::string, std::int64_t>& params,
                       const std::string& key, std::int64_t fallback,
                       bool required = false) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (required) fail(Errc::bad_params, "missing generator param: " + key);
        return fallback;
    }
    return it->second;
}

std::size_t checked_size(const FieldCtx& ctx, std::int64_t size) {
    if (size < 1 || static_cast<std::uint64_t>(size) > ctx.p())
        fail(Errc::bad_params, "requested size " + std::to_string(size) +
                                   " outside [1, p] for p=" + std::to_string(ctx.p()));
    return static_cast<std::size_t>(size);
}

} // namespace

Subset gen_subset(const FieldCtx& ctx, GenKind kind,
                  const std::map<std::string, std::int64_t>& params,
                  std::uint64_t seed) {
    const std::uint32_t p = ctx.p();
    Provenance prov{to_string(kind), params, seed};
    std::vector<Residue> elems;

    switch (kind) {
        case GenKind::random_elements: {
            const std::size_t size = checked_size(ctx, get_param(params, "size", 0, true));
            Prng rng(seed);
            std::vector<std::uint8_t> taken(p, 0);
            while (elems.size() < size) {
                Residue r = rng.next_below(p);
                if (!taken[r]) {
                    taken[r] = 1;
                    elems.push_back(r);
                }
            }
            break;
        }
        case GenKind::interval: {
            const std::size_t size = checked_size(ctx, get_param(params, "size", 0, true));
            const Residue start = ctx.reduce(get_param(params, "start", 1));
            prov.params["start"] = start;
            for (std::size_t k = 0; k < size; ++k)
                elems.push_back(ctx.add(start, static_cast<Residue>(k % p)));
            break;
        }
        case GenKind::arith_prog: {
            const std::size_t size = checked_size(ctx, get_param(params, "size", 0, true));
            const Residue start = ctx.reduce(get_param(params, "start", 1));
            const Residue step = ctx.reduce(get_param(params, "step", 1));
            if (step == 0) fail(Errc::bad_params, "arith_prog step is 0 mod p");
            prov.params["start"] = start;
            prov.params["step"] = step;
            Residue cur = start;
            for (std::size_t k = 0; k < size; ++k, cur = ctx.add(cur, step))
                elems.push_back(cur);
            break;
        }
        case GenKind::geom_prog: {
            const std::size_t size = checked_size(ctx, get_param(params, "size", 0, true));
            const Residue start = ctx.reduce(get_param(params, "start", 1));
            const Residue ratio = ctx.reduce(get_param(params, "ratio", 0, true));
            if (start == 0 || ratio == 0)
                fail(Errc::bad_params, "geom_prog start and ratio must be nonzero mod p");
            prov.params["start"] = start;
            prov.params["ratio"] = ratio;
            Residue cur = start;
            for (std::size_t k = 0; k < size; ++k, cur = ctx.mul(cur, ratio))
                elems.push_back(cur);
            break;
        }
        case GenKind::subgroup: {
            const std::int64_t order = get_param(params, "order", 0, true);
            if (order < 1 || (p - 1) % static_cast<std::uint64_t>(order) != 0)
                fail(Errc::bad_params, "subgroup order " + std::to_string(order) +
                                           " does not divide p-1 = " + std::to_string(p - 1));
            const Residue h =
                ctx.pow(ctx.primitive_root(), (p - 1) / static_cast<std::uint32_t>(order));
            Residue cur = 1;
            for (std::int64_t k = 0; k < order; ++k, cur = ctx.mul(cur, h))
                elems.push_back(cur);
            break;
        }
    }

    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        fail(Errc::bad_params, "generator produced duplicate elements");
    return Subset(p, std::move(elems), std::move(prov));
}

} // namespace ffinc
