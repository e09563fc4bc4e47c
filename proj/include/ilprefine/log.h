/*******************************************************************************
 * Minimal stderr notice channel.
 *
 * @file:   log.h
 ******************************************************************************/
#pragma once

#include <string_view>

namespace ilprefine {

void set_notices_enabled(bool enabled);
bool notices_enabled();
void notice(std::string_view message);

} // namespace ilprefine
