/*!
  \file rational.hpp
  \brief Exact rational arithmetic used throughout the library.

  Public interfaces carry `big_rat` (arbitrary precision).  The simplex hot
  path uses `rat64`, a checked 64-bit rational that throws `rat64_overflow`
  so callers can retry with `big_rat`.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ptf
{

using big_int = boost::multiprecision::cpp_int;
using big_rat = boost::multiprecision::cpp_rational;

/*! Thrown by rat64 when a reduced numerator or denominator leaves int64 range. */
struct rat64_overflow : std::overflow_error
{
  rat64_overflow() : std::overflow_error( "rat64 overflow" ) {}
};

namespace detail
{

inline unsigned __int128 gcd_u128( unsigned __int128 a, unsigned __int128 b )
{
  while ( b != 0 )
  {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

} // namespace detail

/*! \brief Reduced fraction over int64 with overflow detection.

  Invariant: den > 0 and gcd(|num|, den) = 1.
*/
class rat64
{
public:
  constexpr rat64() = default;
  rat64( int64_t v ) : num_( v ) {}
  rat64( int64_t n, int64_t d )
  {
    assign( n, d );
  }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

  friend rat64 operator+( rat64 const& a, rat64 const& b )
  {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_i128( n, d );
  }
  friend rat64 operator-( rat64 const& a, rat64 const& b )
  {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_i128( n, d );
  }
  friend rat64 operator*( rat64 const& a, rat64 const& b )
  {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_i128( n, d );
  }
  friend rat64 operator/( rat64 const& a, rat64 const& b )
  {
    if ( b.num_ == 0 )
    {
      throw std::domain_error( "rat64 division by zero" );
    }
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    return from_i128( n, d );
  }
  rat64 operator-() const
  {
    rat64 r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  rat64& operator+=( rat64 const& o ) { return *this = *this + o; }
  rat64& operator-=( rat64 const& o ) { return *this = *this - o; }
  rat64& operator*=( rat64 const& o ) { return *this = *this * o; }
  rat64& operator/=( rat64 const& o ) { return *this = *this / o; }

  friend bool operator==( rat64 const& a, rat64 const& b )
  {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=( rat64 const& a, rat64 const& b ) { return !( a == b ); }
  friend bool operator<( rat64 const& a, rat64 const& b )
  {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>( rat64 const& a, rat64 const& b ) { return b < a; }
  friend bool operator<=( rat64 const& a, rat64 const& b ) { return !( b < a ); }
  friend bool operator>=( rat64 const& a, rat64 const& b ) { return !( a < b ); }

  big_rat to_big() const { return big_rat( num_, den_ ); }

private:
  static rat64 from_i128( __int128 n, __int128 d )
  {
    if ( d < 0 )
    {
      n = -n;
      d = -d;
    }
    if ( n == 0 )
    {
      return rat64();
    }
    unsigned __int128 un = n < 0 ? (unsigned __int128)( -n ) : (unsigned __int128)n;
    unsigned __int128 g = detail::gcd_u128( un, (unsigned __int128)d );
    n /= (__int128)g;
    d /= (__int128)g;
    if ( n > INT64_MAX || n < INT64_MIN || d > INT64_MAX )
    {
      throw rat64_overflow();
    }
    rat64 r;
    r.num_ = (int64_t)n;
    r.den_ = (int64_t)d;
    return r;
  }

  void assign( int64_t n, int64_t d )
  {
    if ( d == 0 )
    {
      throw std::domain_error( "rat64 zero denominator" );
    }
    if ( d < 0 )
    {
      n = -n;
      d = -d;
    }
    int64_t g = std::gcd( n < 0 ? -n : n, d );
    if ( g > 1 )
    {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  int64_t num_{ 0 };
  int64_t den_{ 1 };
};

/*! Formats an exact rational as "p" or "p/q". */
inline std::string format_rat( big_rat const& r )
{
  std::ostringstream os;
  if ( boost::multiprecision::denominator( r ) == 1 )
  {
    os << boost::multiprecision::numerator( r );
  }
  else
  {
    os << boost::multiprecision::numerator( r ) << '/' << boost::multiprecision::denominator( r );
  }
  return os.str();
}

/*! Parses "p" or "p/q"; throws std::invalid_argument on malformed input. */
inline big_rat parse_rat( std::string const& text )
{
  auto const slash = text.find( '/' );
  try
  {
    if ( slash == std::string::npos )
    {
      return big_rat( big_int( text ) );
    }
    big_int p( text.substr( 0, slash ) );
    big_int q( text.substr( slash + 1 ) );
    if ( q == 0 )
    {
      throw std::invalid_argument( "zero denominator" );
    }
    return big_rat( p, q );
  }
  catch ( std::runtime_error const& )
  {
    throw std::invalid_argument( "malformed rational: " + text );
  }
}

} // namespace ptf
