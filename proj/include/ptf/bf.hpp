/*!
  \file bf.hpp
  \brief Boolean functions as +-1 truth vectors, monomial indexing, and the
         Sylvester-Hadamard structure relating the two.

  Assignment convention (fixed, global): variable x_k at assignment index t
  has value +1 if bit k of t is 0 and -1 if bit k of t is 1, with k = 0 the
  least significant bit.  Monomial j is the product of x_k over the set bits
  of j; j = 0 is the constant monomial.
*/

#pragma once

#include "rational.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptf
{

inline constexpr uint32_t max_supported_vars = 12;

using monomial_id = uint32_t;

inline uint32_t monomial_degree( monomial_id j )
{
  return std::popcount( j );
}

/*! \brief Truth vector of a Boolean function over {-1,+1}^n. */
class boolean_function
{
public:
  boolean_function( uint32_t num_vars, std::vector<int8_t> signs )
      : num_vars_( num_vars ), signs_( std::move( signs ) )
  {
    if ( num_vars_ < 1 || num_vars_ > max_supported_vars )
    {
      throw std::invalid_argument( "variable count out of range" );
    }
    if ( signs_.size() != size() )
    {
      throw std::invalid_argument( "truth vector length must be 2^n" );
    }
    for ( auto v : signs_ )
    {
      if ( v != 1 && v != -1 )
      {
        throw std::invalid_argument( "truth vector entries must be +-1" );
      }
    }
  }

  /*! Builds the function whose truth vector is given by the bits of `bits`:
      bit t set means f_t = +1. */
  static boolean_function from_bits( uint32_t num_vars, uint64_t bits )
  {
    if ( num_vars < 1 || num_vars > 6 )
    {
      throw std::invalid_argument( "from_bits supports n <= 6" );
    }
    std::vector<int8_t> signs( size_t( 1 ) << num_vars );
    for ( size_t t = 0; t < signs.size(); ++t )
    {
      signs[t] = ( ( bits >> t ) & 1 ) ? int8_t( 1 ) : int8_t( -1 );
    }
    return boolean_function( num_vars, std::move( signs ) );
  }

  uint32_t num_vars() const { return num_vars_; }
  size_t size() const { return size_t( 1 ) << num_vars_; }
  int8_t at( size_t t ) const { return signs_[t]; }
  std::vector<int8_t> const& signs() const { return signs_; }

  boolean_function negated() const
  {
    auto s = signs_;
    for ( auto& v : s )
    {
      v = -v;
    }
    return boolean_function( num_vars_, std::move( s ) );
  }

  friend bool operator==( boolean_function const& a, boolean_function const& b )
  {
    return a.num_vars_ == b.num_vars_ && a.signs_ == b.signs_;
  }

private:
  uint32_t num_vars_;
  std::vector<int8_t> signs_;
};

/*! Entry D[t][j] of the order-2^n Sylvester-Hadamard matrix: monomial j
    evaluated at assignment t. */
inline int hadamard_entry( uint32_t num_vars, uint32_t t, monomial_id j )
{
  size_t const len = size_t( 1 ) << num_vars;
  if ( t >= len || j >= len )
  {
    throw std::invalid_argument( "hadamard_entry: index out of range" );
  }
  return ( std::popcount( t & j ) & 1 ) ? -1 : 1;
}

/*! \brief Exact spectral coefficients of a Boolean function.

  Satisfies f_t = sum_j coeffs[j] * D[t][j] for every t, and 2^n * coeffs[j]
  is an integer for all j.
*/
struct spectrum_t
{
  uint32_t num_vars;
  std::vector<big_rat> coeffs;
};

/*! In-place Walsh-Hadamard butterfly on integers (no scaling). */
inline void fwht( std::vector<int64_t>& v )
{
  for ( size_t h = 1; h < v.size(); h <<= 1 )
  {
    for ( size_t i = 0; i < v.size(); i += h << 1 )
    {
      for ( size_t k = i; k < i + h; ++k )
      {
        auto const a = v[k];
        auto const b = v[k + h];
        v[k] = a + b;
        v[k + h] = a - b;
      }
    }
  }
}

/*! Spectrum via s = 2^-n * D * f, computed with the butterfly transform. */
inline spectrum_t spectrum( boolean_function const& f )
{
  std::vector<int64_t> work( f.size() );
  for ( size_t t = 0; t < f.size(); ++t )
  {
    work[t] = f.at( t );
  }
  fwht( work );
  spectrum_t s;
  s.num_vars = f.num_vars();
  s.coeffs.reserve( work.size() );
  auto const scale = big_int( 1 ) << f.num_vars();
  for ( auto v : work )
  {
    s.coeffs.emplace_back( big_int( v ), scale );
  }
  return s;
}

/* --- text formats ------------------------------------------------------ */

namespace detail
{

inline uint32_t vars_for_length( size_t len )
{
  if ( len < 2 || ( len & ( len - 1 ) ) != 0 )
  {
    throw std::invalid_argument( "truth vector length must be a power of two >= 2" );
  }
  uint32_t n = 0;
  while ( ( size_t( 1 ) << n ) < len )
  {
    ++n;
  }
  if ( n > max_supported_vars )
  {
    throw std::invalid_argument( "variable count out of range" );
  }
  return n;
}

} // namespace detail

/*! \brief Parses a Boolean function from text.

  Accepted forms:
    - binary string, character index t, '1' -> +1 and '0' -> -1;
    - JSON-style array of +-1 integers, e.g. "[1,-1,-1,1]";
    - "n:HEX" where bit t of the hex integer gives f_t ('1' -> +1).
*/
inline boolean_function parse_bf( std::string const& text )
{
  if ( text.empty() )
  {
    throw std::invalid_argument( "empty Boolean function text" );
  }
  if ( text.front() == '[' )
  {
    if ( text.back() != ']' )
    {
      throw std::invalid_argument( "unterminated array form" );
    }
    std::vector<int8_t> signs;
    std::string tok;
    for ( size_t i = 1; i < text.size(); ++i )
    {
      char const c = text[i];
      if ( c == ',' || c == ']' )
      {
        if ( tok == "1" || tok == "+1" )
        {
          signs.push_back( 1 );
        }
        else if ( tok == "-1" )
        {
          signs.push_back( -1 );
        }
        else
        {
          throw std::invalid_argument( "array entries must be +-1, got '" + tok + "'" );
        }
        tok.clear();
      }
      else if ( c != ' ' )
      {
        tok += c;
      }
    }
    auto const n = detail::vars_for_length( signs.size() );
    return boolean_function( n, std::move( signs ) );
  }
  if ( auto const colon = text.find( ':' ); colon != std::string::npos )
  {
    uint32_t n = 0;
    try
    {
      size_t pos = 0;
      n = std::stoul( text.substr( 0, colon ), &pos );
      if ( pos != colon )
      {
        throw std::invalid_argument( "" );
      }
    }
    catch ( std::exception const& )
    {
      throw std::invalid_argument( "malformed variable count in hex form" );
    }
    if ( n < 1 || n > max_supported_vars )
    {
      throw std::invalid_argument( "variable count out of range" );
    }
    std::string const hex = text.substr( colon + 1 );
    if ( hex.empty() )
    {
      throw std::invalid_argument( "missing hex digits" );
    }
    std::vector<int8_t> signs( size_t( 1 ) << n, -1 );
    for ( size_t i = 0; i < hex.size(); ++i )
    {
      char const c = hex[hex.size() - 1 - i];
      uint32_t nibble = 0;
      if ( c >= '0' && c <= '9' )
      {
        nibble = c - '0';
      }
      else if ( c >= 'a' && c <= 'f' )
      {
        nibble = 10 + ( c - 'a' );
      }
      else if ( c >= 'A' && c <= 'F' )
      {
        nibble = 10 + ( c - 'A' );
      }
      else
      {
        throw std::invalid_argument( "invalid hex digit" );
      }
      for ( uint32_t b = 0; b < 4; ++b )
      {
        if ( nibble & ( 1u << b ) )
        {
          size_t const t = 4 * i + b;
          if ( t >= signs.size() )
          {
            throw std::invalid_argument( "hex value exceeds 2^n bits" );
          }
          signs[t] = 1;
        }
      }
    }
    return boolean_function( n, std::move( signs ) );
  }
  std::vector<int8_t> signs;
  signs.reserve( text.size() );
  for ( char const c : text )
  {
    if ( c == '0' )
    {
      signs.push_back( -1 );
    }
    else if ( c == '1' )
    {
      signs.push_back( 1 );
    }
    else
    {
      throw std::invalid_argument( "binary form allows only '0'/'1'" );
    }
  }
  auto const nvars = detail::vars_for_length( signs.size() );
  return boolean_function( nvars, std::move( signs ) );
}

enum class bf_format
{
  binary,
  array,
  hex
};

inline std::string format_bf( boolean_function const& f, bf_format fmt = bf_format::binary )
{
  switch ( fmt )
  {
  case bf_format::binary:
  {
    std::string out( f.size(), '0' );
    for ( size_t t = 0; t < f.size(); ++t )
    {
      out[t] = f.at( t ) > 0 ? '1' : '0';
    }
    return out;
  }
  case bf_format::array:
  {
    std::string out = "[";
    for ( size_t t = 0; t < f.size(); ++t )
    {
      if ( t )
      {
        out += ',';
      }
      out += f.at( t ) > 0 ? "1" : "-1";
    }
    out += ']';
    return out;
  }
  case bf_format::hex:
  {
    static char const* digits = "0123456789abcdef";
    size_t const num_nibbles = ( f.size() + 3 ) / 4;
    std::string hex;
    bool leading = true;
    for ( size_t i = num_nibbles; i-- > 0; )
    {
      uint32_t nibble = 0;
      for ( uint32_t b = 0; b < 4; ++b )
      {
        size_t const t = 4 * i + b;
        if ( t < f.size() && f.at( t ) > 0 )
        {
          nibble |= 1u << b;
        }
      }
      if ( nibble == 0 && leading && i != 0 )
      {
        continue;
      }
      leading = false;
      hex += digits[nibble];
    }
    return std::to_string( f.num_vars() ) + ":" + hex;
  }
  }
  throw std::logic_error( "unreachable" );
}

} // namespace ptf
