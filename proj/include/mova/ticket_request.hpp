#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mova {

/// Journey request as entered by the passenger. Renders to `MOVA|from|to|date|class|passenger`.
struct TicketRequest {
    std::string from;
    std::string to;
    std::string date;  // YYYY-MM-DD
    int travel_class = 2;
    std::string passenger;

    /// Throws DomainError when a field is empty, contains '|', is not printable ASCII,
    /// the date is not a calendar date, the class is not 1 or 2, or the message is too long.
    void validate() const;
    std::string render() const;
    /// Inverse of render(); nullopt for text that is not a valid rendered request.
    static std::optional<TicketRequest> parse(std::string_view message);

    friend bool operator==(const TicketRequest&, const TicketRequest&) = default;
};

bool is_iso_date(std::string_view text);

/// One station name per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> parse_station_list(std::string_view text);

}  // namespace mova
