#include "lphedge/options.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lphedge/errors.hpp"

namespace lphedge::options {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kHeaderFields[] = {"timestamp", "underlying", "spot",
                                         "premium_denomination"};
constexpr const char* kQuoteFields[] = {"kind", "strike", "expiry", "bid", "ask"};

std::string format_decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Fields must appear exactly as listed, in order, with nothing extra.
template <std::size_t N>
void check_fields(const ordered_json& obj, const char* const (&expected)[N],
                  const char* what, long record) {
    std::size_t i = 0;
    for (const auto& item : obj.items()) {
        if (i >= N) {
            throw ChainError(std::string("unknown field '") + item.key() + "' in " + what,
                             record);
        }
        if (item.key() != expected[i]) {
            throw ChainError(std::string("expected field '") + expected[i] + "' in " + what +
                                 ", found '" + item.key() + "'",
                             record);
        }
        ++i;
    }
    if (i != N) {
        throw ChainError(std::string("missing field '") + expected[i] + "' in " + what, record);
    }
}

double parse_decimal(const ordered_json& v, const char* field, long record) {
    if (!v.is_string()) {
        throw ChainError(std::string(field) + " must be a decimal string", record);
    }
    const std::string s = v.get<std::string>();
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (errno != 0 || end == begin || *end != '\0' || !std::isfinite(value)) {
        throw ChainError(std::string("invalid decimal '") + s + "' for " + field, record);
    }
    return value;
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
        return false;
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    const int month = std::stoi(s.substr(5, 2));
    const int day = std::stoi(s.substr(8, 2));
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::optional<double> parse_premium(const ordered_json& v, const char* field, long record) {
    if (v.is_null()) {
        return std::nullopt;
    }
    const double value = parse_decimal(v, field, record);
    if (value < 0.0) {
        throw ChainError(std::string(field) + " must be nonnegative", record);
    }
    return value;
}

OptionQuote parse_quote(const ordered_json& rec, long record,
                        const std::string& underlying, double spot,
                        bool premiums_in_underlying) {
    if (!rec.is_object()) {
        throw ChainError("quote record must be an object", record);
    }
    check_fields(rec, kQuoteFields, "quote record", record);

    OptionQuote q;
    const std::string kind = rec["kind"].is_string() ? rec["kind"].get<std::string>() : "";
    if (kind == "call") {
        q.kind = OptionKind::Call;
    } else if (kind == "put") {
        q.kind = OptionKind::Put;
    } else {
        throw ChainError("kind must be 'call' or 'put'", record);
    }

    q.strike = parse_decimal(rec["strike"], "strike", record);
    if (!(q.strike > 0.0)) {
        throw ChainError("strike must be positive", record);
    }

    if (!rec["expiry"].is_string() || !valid_iso_date(rec["expiry"].get<std::string>())) {
        throw ChainError("expiry must be an ISO-8601 date (YYYY-MM-DD)", record);
    }
    q.expiry = rec["expiry"].get<std::string>();

    q.bid = parse_premium(rec["bid"], "bid", record);
    q.ask = parse_premium(rec["ask"], "ask", record);
    if (q.bid && q.ask && *q.bid > *q.ask) {
        throw ChainError("bid exceeds ask", record);
    }
    if (premiums_in_underlying) {
        if (q.bid) {
            *q.bid *= spot;
        }
        if (q.ask) {
            *q.ask *= spot;
        }
    }
    q.underlying = underlying;
    return q;
}

struct Header {
    std::string timestamp;
    std::string underlying;
    double spot = 0.0;
    bool premiums_in_underlying = false;
};

Header parse_header(const ordered_json& h) {
    check_fields(h, kHeaderFields, "snapshot header", -1);
    Header out;
    if (!h["timestamp"].is_string() || !h["underlying"].is_string()) {
        throw ChainError("timestamp and underlying must be strings");
    }
    out.timestamp = h["timestamp"].get<std::string>();
    out.underlying = h["underlying"].get<std::string>();
    out.spot = parse_decimal(h["spot"], "spot", -1);
    if (!(out.spot > 0.0)) {
        throw ChainError("spot must be positive");
    }
    const std::string denom = h["premium_denomination"].is_string()
                                  ? h["premium_denomination"].get<std::string>()
                                  : "";
    if (denom == "underlying") {
        out.premiums_in_underlying = true;
    } else if (denom != "quote") {
        throw ChainError("premium_denomination must be 'quote' or 'underlying'");
    }
    return out;
}

ordered_json parse_json(const std::string& text, const char* what, long record) {
    ordered_json parsed = ordered_json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw ChainError(std::string("malformed JSON in ") + what, record);
    }
    return parsed;
}

} // namespace

const char* to_string(OptionKind kind) {
    return kind == OptionKind::Call ? "call" : "put";
}

std::string contract_id(const OptionQuote& quote) {
    char strike[32];
    std::snprintf(strike, sizeof(strike), "%.10g", quote.strike);
    return quote.underlying + "-" + quote.expiry + "-" + strike +
           (quote.kind == OptionKind::Call ? "-C" : "-P");
}

double intrinsic_value(OptionKind kind, amm::Price final_price, amm::Price strike) {
    const double diff = kind == OptionKind::Call ? final_price.value() - strike.value()
                                                 : strike.value() - final_price.value();
    return diff > 0.0 ? diff : 0.0;
}

double payoff_vanilla(OptionKind kind, Side side, amm::Price final_price,
                      amm::Price strike, double premium) {
    if (premium < 0.0 || !std::isfinite(premium)) {
        throw std::domain_error("premium must be nonnegative and finite");
    }
    const double intrinsic = intrinsic_value(kind, final_price, strike);
    return side == Side::Long ? intrinsic - premium : premium - intrinsic;
}

double entry_premium(const OptionQuote& quote, double theta) {
    if (theta == 0.0) {
        throw std::invalid_argument("leg theta must be nonzero");
    }
    if (theta > 0.0) {
        if (!quote.ask) {
            throw ChainError("no ask quoted for " + contract_id(quote));
        }
        return *quote.ask;
    }
    if (!quote.bid) {
        throw ChainError("no bid quoted for " + contract_id(quote));
    }
    return *quote.bid;
}

double leg_payoff(const PortfolioLeg& leg, amm::Price final_price) {
    const double premium = entry_premium(leg.quote, leg.theta);
    const Side side = leg.theta > 0.0 ? Side::Long : Side::Short;
    return std::abs(leg.theta) * payoff_vanilla(leg.quote.kind, side, final_price,
                                                amm::Price(leg.quote.strike), premium);
}

double portfolio_payoff(std::span<const PortfolioLeg> legs, amm::Price final_price) {
    double total = 0.0;
    for (const auto& leg : legs) {
        total += leg_payoff(leg, final_price);
    }
    return total;
}

OptionsChain parse_chain(const std::string& text) {
    Header header;
    std::vector<OptionQuote> quotes;

    ordered_json whole = ordered_json::parse(text, nullptr, false);
    if (!whole.is_discarded() && whole.is_object() && whole.contains("quotes")) {
        // Array form: header fields plus the quotes array.
        constexpr const char* fields[] = {"timestamp", "underlying", "spot",
                                          "premium_denomination", "quotes"};
        check_fields(whole, fields, "snapshot", -1);
        ordered_json header_only = whole;
        header_only.erase("quotes");
        header = parse_header(header_only);
        if (!whole["quotes"].is_array()) {
            throw ChainError("quotes must be an array");
        }
        long index = 0;
        for (const auto& rec : whole["quotes"]) {
            quotes.push_back(parse_quote(rec, index++, header.underlying, header.spot,
                                         header.premiums_in_underlying));
        }
    } else {
        // Line-delimited form: header line, then one quote object per line.
        std::istringstream in(text);
        std::string line;
        bool have_header = false;
        long index = 0;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            if (!have_header) {
                header = parse_header(parse_json(line, "snapshot header", -1));
                have_header = true;
            } else {
                quotes.push_back(parse_quote(parse_json(line, "quote record", index), index,
                                             header.underlying, header.spot,
                                             header.premiums_in_underlying));
                ++index;
            }
        }
        if (!have_header) {
            throw ChainError("snapshot missing header");
        }
    }

    if (quotes.empty()) {
        throw ChainError("snapshot contains no quotes");
    }
    return OptionsChain{header.timestamp, header.underlying, header.spot, std::move(quotes)};
}

OptionsChain load_chain(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ChainError("cannot read chain file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chain(buf.str());
}

std::string serialize_chain(const OptionsChain& chain) {
    ordered_json doc;
    doc["timestamp"] = chain.timestamp;
    doc["underlying"] = chain.underlying;
    doc["spot"] = format_decimal(chain.spot);
    doc["premium_denomination"] = "quote";
    ordered_json quotes = ordered_json::array();
    for (const auto& q : chain.quotes) {
        ordered_json rec;
        rec["kind"] = to_string(q.kind);
        rec["strike"] = format_decimal(q.strike);
        rec["expiry"] = q.expiry;
        rec["bid"] = q.bid ? ordered_json(format_decimal(*q.bid)) : ordered_json(nullptr);
        rec["ask"] = q.ask ? ordered_json(format_decimal(*q.ask)) : ordered_json(nullptr);
        quotes.push_back(std::move(rec));
    }
    doc["quotes"] = std::move(quotes);
    return doc.dump(2) + "\n";
}

void save_chain(const OptionsChain& chain, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ChainError("cannot write chain file: " + path);
    }
    out << serialize_chain(chain);
}

} // namespace lphedge::options
