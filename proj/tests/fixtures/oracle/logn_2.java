import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        long n = sc.nextLong();
        long lo = 0, hi = n + 1;
        while (lo < hi) {
            long mid = (lo + hi) / 2;
            if (mid * mid >= n) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        System.out.println(lo);
    }
}
