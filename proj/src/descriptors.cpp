#include "orlicz/descriptors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace orlicz {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view token) {
    token = trim(token);
    if (token == "inf" || token == "+inf")
        return std::numeric_limits<double>::infinity();
    double value = 0;
    const char *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end)
        throw InputError("not a number: '" + std::string{token} + "'");
    return value;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_number(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

// "kind:args" split.
std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
    text = trim(text);
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        return {text, {}};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

bool looks_like_json(std::string_view text) {
    text = trim(text);
    return !text.empty() && (text.front() == '{' || text.front() == '[');
}

nlohmann::json parse_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string{"malformed JSON: "} + e.what());
    }
}

double json_number(const nlohmann::json &j, const char *key) {
    if (!j.contains(key))
        throw InputError(std::string{"missing field '"} + key + "'");
    const auto &v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
        return parse_number(v.get<std::string>());
    throw InputError(std::string{"field '"} + key + "' must be a number");
}

std::string json_kind(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw InputError("descriptor must be an object with a string 'kind'");
    return j.at("kind").get<std::string>();
}

std::vector<std::pair<double, double>> json_pairs(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw InputError(std::string{"field '"} + key + "' must be an array of pairs");
    std::vector<std::pair<double, double>> out;
    for (const auto &item : j.at(key)) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw InputError(std::string{"entries of '"} + key + "' must be [number, number]");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

// Constructor-level rejections are input errors at this layer.
template <typename F>
auto guarded(F &&make) {
    try {
        return make();
    } catch (const InputError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    } catch (const std::domain_error &e) {
        throw InputError(e.what());
    }
}

OrliczFunction make_pwl(const std::vector<std::pair<double, double>> &pairs) {
    std::vector<Breakpoint> points;
    for (auto [u, v] : pairs)
        points.push_back({u, v});
    return OrliczFunction::piecewise_linear(std::move(points));
}

} // namespace

OrliczFunction parse_phi(std::string_view text) {
    if (looks_like_json(text))
        return phi_from_json(parse_json(text));
    auto [kind, args] = split_kind(text);
    const std::vector<double> a = parse_list(args);
    auto expect = [&](std::size_t n) {
        if (a.size() != n)
            throw InputError("phi '" + std::string{kind} + "' takes " + std::to_string(n) +
                             " parameter(s)");
    };
    return guarded([&] {
        if (kind == "power") {
            expect(1);
            return OrliczFunction::power(a[0]);
        }
        if (kind == "exp_minus") {
            expect(0);
            return OrliczFunction::exp_minus();
        }
        if (kind == "flat_then_power") {
            expect(2);
            return OrliczFunction::flat_then_power(a[0], a[1]);
        }
        if (kind == "pwl") {
            if (a.size() < 4 || a.size() % 2 != 0)
                throw InputError("pwl takes an even number (>= 4) of coordinates");
            std::vector<std::pair<double, double>> pairs;
            for (std::size_t i = 0; i < a.size(); i += 2)
                pairs.emplace_back(a[i], a[i + 1]);
            return make_pwl(pairs);
        }
        throw InputError("unknown phi kind: '" + std::string{kind} + "'");
    });
}

OrliczFunction phi_from_json(const nlohmann::json &j) {
    if (j.is_string())
        return parse_phi(j.get<std::string>());
    const std::string kind = json_kind(j);
    return guarded([&] {
        if (kind == "power")
            return OrliczFunction::power(json_number(j, "q"));
        if (kind == "exp_minus")
            return OrliczFunction::exp_minus();
        if (kind == "flat_then_power")
            return OrliczFunction::flat_then_power(json_number(j, "a"), json_number(j, "q"));
        if (kind == "pwl")
            return make_pwl(json_pairs(j, "points"));
        throw InputError("unknown phi kind: '" + kind + "'");
    });
}

PlanarNorm parse_planar_norm(std::string_view text) {
    if (looks_like_json(text))
        return planar_norm_from_json(parse_json(text));
    auto [kind, args] = split_kind(text);
    const std::vector<double> a = parse_list(args);
    return guarded([&] {
        if (kind == "l1" && a.empty())
            return PlanarNorm::l1();
        if (kind == "linf" && a.empty())
            return PlanarNorm::linf();
        if (kind == "lq" && a.size() == 1)
            return PlanarNorm::lq(a[0]);
        throw InputError("unknown planar norm: '" + std::string{trim(text)} + "'");
    });
}

PlanarNorm planar_norm_from_json(const nlohmann::json &j) {
    if (j.is_string())
        return parse_planar_norm(j.get<std::string>());
    const std::string kind = json_kind(j);
    return guarded([&] {
        if (kind == "l1")
            return PlanarNorm::l1();
        if (kind == "linf")
            return PlanarNorm::linf();
        if (kind == "lq")
            return PlanarNorm::lq(json_number(j, "q"));
        if (kind == "boundary") {
            std::vector<BoundarySample> samples;
            for (auto [angle, radius] : json_pairs(j, "samples"))
                samples.push_back({angle, radius});
            return PlanarNorm::boundary(std::move(samples));
        }
        throw InputError("unknown planar norm kind: '" + kind + "'");
    });
}

std::shared_ptr<const MeasureSpace> parse_space(std::string_view text) {
    if (looks_like_json(text))
        return space_from_json(parse_json(text));
    auto [kind, args] = split_kind(text);
    return guarded([&] {
        if (kind == "counting") {
            const std::vector<double> a = parse_list(args);
            if (a.size() != 1 || !(a[0] >= 1) || a[0] != std::floor(a[0]) || a[0] > 1e7)
                throw InputError("counting:N needs a positive integer N");
            return MeasureSpace::counting(static_cast<std::size_t>(a[0]));
        }
        if (kind == "weights") {
            std::vector<long double> w;
            for (double v : parse_list(args))
                w.push_back(v);
            return MeasureSpace::make(std::move(w));
        }
        throw InputError("unknown space descriptor: '" + std::string{trim(text)} + "'");
    });
}

std::shared_ptr<const MeasureSpace> space_from_json(const nlohmann::json &j) {
    if (j.is_string())
        return parse_space(j.get<std::string>());
    if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
        throw InputError("space descriptor must be {\"atoms\":[{\"w\":...},...]}");
    std::vector<long double> w;
    for (const auto &atom : j.at("atoms")) {
        if (!atom.is_object())
            throw InputError("each atom must be an object with field 'w'");
        w.push_back(json_number(atom, "w"));
    }
    return guarded([&] { return MeasureSpace::make(std::move(w)); });
}

std::vector<double> parse_values(std::string_view text) {
    if (looks_like_json(text))
        return values_from_json(parse_json(text));
    std::vector<double> v = parse_list(text);
    for (double e : v)
        if (!std::isfinite(e))
            throw InputError("values must be finite");
    return v;
}

std::vector<double> values_from_json(const nlohmann::json &j) {
    const nlohmann::json &arr = j.is_object() && j.contains("values") ? j.at("values") : j;
    if (arr.is_string())
        return parse_values(arr.get<std::string>());
    if (!arr.is_array())
        throw InputError("values must be an array of numbers");
    std::vector<double> out;
    for (const auto &e : arr) {
        if (!e.is_number())
            throw InputError("values must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t colon = text.find(':', start);
            parts.push_back(parse_number(text.substr(start, colon - start)));
            if (colon == std::string_view::npos)
                break;
            start = colon + 1;
        }
        if (parts.size() != 3 || !(parts[2] >= 1) || parts[2] != std::floor(parts[2]) ||
            parts[2] > 1e6)
            throw InputError("grid must be lo:hi:count with a positive integer count");
        const auto count = static_cast<std::size_t>(parts[2]);
        if (count == 1)
            return {parts[0]};
        std::vector<double> out;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(parts[0] + (parts[1] - parts[0]) * static_cast<double>(i) /
                                         static_cast<double>(count - 1));
        return out;
    }
    std::vector<double> out = parse_list(text);
    if (out.empty())
        throw InputError("empty grid");
    return out;
}

} // namespace orlicz
