#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "smalelab/battery.hpp"
#include "smalelab/blaschke.hpp"
#include "smalelab/critical.hpp"
#include "smalelab/families.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"

namespace smalelab::io {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON text with every floating value printed to 17 significant digits;
/// non-finite values become null.
std::string dump(const Json& value, int indent = 2);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);

/// {degree, rotation, zeros: [{re, im}]}.
Json product_to_json(const BlaschkeProduct& b);
BlaschkeProduct product_from_json(const Json& j);
BlaschkeProduct product_from_text(const std::string& text, const std::string& source);
BlaschkeProduct read_product_file(const std::string& path);

Json critical_to_json(const CriticalSet& crit);
Json report_to_json(const QuotientReport& report);
Json prop1_to_json(const Prop1Report& report);
Json rescale_to_json(const RescalePair& pair, const RescaleQuotients& q);
Json search_to_json(const SearchResult& result, bool include_meta);
Json battery_to_json(const BatteryReport& report);

}  // namespace smalelab::io
