import java.util.Scanner;

public class Main {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int best = 0;
        for (int i = 0; i < 5; i++) {
            best = Math.max(best, n % (i + 2));
        }
        System.out.println(best);
    }
}
