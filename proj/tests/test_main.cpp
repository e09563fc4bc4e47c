/*******************************************************************************
 * doctest entry point.
 *
 * @file:   test_main.cpp
 ******************************************************************************/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
